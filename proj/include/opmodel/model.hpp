#pragma once

#include "opmodel/charfun.hpp"

#include <vector>

namespace opm {

// K(Theta) = (F_N(E) (x) E2) + closure of Delta(F_N(E) (x) E1), in coordinates
// [tower2 coordinates ; coordinates along the range basis R of Delta].
struct ModelSpaces {
    CharacteristicData data;
    Mat Delta;        // (I - Theta^*Theta)^{1/2}
    Mat range;        // orthonormal basis R of the closed range of Delta
    Mat graph;        // x -> Theta x + Delta x, as [Theta ; R^* Delta]
    Mat H;            // orthonormal basis of H(Theta) = K(Theta) minus the graph
    int fock_dim = 0; // dim F_N(E) (x) E2
    int k_dim() const { return static_cast<int>(graph.rows()); }
    Mat P() const { return H * H.adjoint(); }
    double graph_isometry = 0.0;
};
ModelSpaces model_spaces(const CharacteristicData& cd, double eps_null = 1e-10);

struct ModelRep {
    ModelSpaces spaces;
    Representation rho;    // on K(Theta)
    Representation sigma;  // on H(Theta), in the coordinates of spaces.H
    std::vector<Mat> S;    // S_Theta(e_p) on the Delta part
    CovariantRep rep;      // (T_Theta, sigma_Theta)
    double covariance = 0.0;           // V_Theta(xi) rho_Theta vs rho_Theta V_Theta on all of K(Theta)
    double isometry = 0.0;             // V_Theta(xi)^* V_Theta(eta) - rho(<xi,eta>) on H(Theta) + graph of grades <= frontier
    double graph_invariance = 0.0;     // V_Theta maps the graph of grades <= frontier into the graph
    double s_consistency = 0.0;        // S(xi) Delta = Delta (T_xi (x) I) on grades <= frontier

    Mat V(const Vec& xi) const;  // V_Theta(xi) on K(Theta)
};
ModelRep model_rep(const ModelSpaces& spaces, double tol = 1e-8);

// Phi : K(Theta) -> K for the characteristic data of rep's own dilation.
struct CanonicalEquivalence {
    CharacteristicData data;
    ModelRep model;
    Mat Phi;
    Mat PhiH;  // H(Theta) -> H
    double unitarity = 0.0;
    double subspace = 0.0;         // distance between Phi(H(Theta)) and H
    double intertwining_v = 0.0;   // on H(Theta) + graph of grades <= frontier
    double intertwining_rho = 0.0;
    double model_operator = 0.0;   // ||PhiH T_Theta(e_p) PhiH^* - T(e_p)||
    double singular_values = 0.0;  // of T~_Theta against T~
};
CanonicalEquivalence canonical_equivalence(const IsometricDilation& dil, double tol = 1e-10);

struct IsomorphismReport {
    bool isomorphic = false;
    double residual = 0.0;
    double w_unitarity = 0.0;
    double w_intertwining = 0.0;
};
// Checks Theta' = (I (x) W2) Theta (I (x) W1^*) with W_i : E_i -> E_i'.
IsomorphismReport verify_isomorphism(const CharacteristicData& theta, const CharacteristicData& theta_prime,
                                     const Mat& w1, const Mat& w2, double tol = 1e-8);

// Canonical round trip: the model of Theta, the characteristic data of that
// model and the unitaries W1 : E1 -> D, W2 : E2 -> D_* relating the two.
struct Witnesses {
    ModelRep model;
    CharacteristicData model_data;
    Mat W1, W2;
    double span_isometry = 0.0;  // the partial map K(Theta) -> K on H(Theta) + V(E)H(Theta)
};
Witnesses construct_witnesses(const CharacteristicData& cd, double tol = 1e-8);

struct MinimalityReport {
    Verdict verdict = Verdict::Undecided;
    double missing = 0.0;       // distance of the frontier part of K(Theta) from the span of V-words
    double m0_distance = 0.0;      // distance between M_0 and (I - P)K_1
    int frontier = 0;
};
MinimalityReport check_minimality(const ModelRep& model, double tol = 1e-8);

struct Factorization {
    CharacteristicData theta1;  // F (x) H0 -> F (x) E2
    CharacteristicData theta2;  // F (x) E1 -> F (x) H0
    Mat H0;                     // wandering subspace, tower2 coordinates
    Representation rho;
    double product_residual = 0.0;    // on grades <= frontier
    double decomposition = 0.0;       // (F (x) E2) - Theta1(...) against H(Theta) - M
    PredicateReport inner1, inner2;
};
// msub: orthonormal basis inside H(Theta), K(Theta) coordinates.
Factorization factor_from_subspace(const ModelRep& model, const Mat& msub, double tol = 1e-8);

struct SubspaceResult {
    Mat M;  // K(Theta) coordinates
    double invariance = 0.0;
};
SubspaceResult subspace_from_factorization(const ModelRep& model, const CharacteristicData& theta1,
                                           const CharacteristicData& theta2, double tol = 1e-8);

// Theta1' = Theta1 (I (x) V0) for the unitary V0 aligning the wandering subspaces.
double factor_equivalence(const Factorization& a, const Factorization& b);

// Invariance residual of a subspace of H(Theta) under T_Theta and sigma_Theta.
double invariance_residual(const ModelRep& model, const Mat& msub);

struct LiftResult {
    Mat Psi;            // on F_N(E) (x) D_*, commuting with the induced representation
    Mat U0;             // H -> F_N(E) (x) D_*
    std::vector<Mat> coefficients;
    CharFunction symbol;  // Xi over E^tau, tau the supplement of tau2 with itself
    double constraint = 0.0;    // ||Psi^* U0 - U0 X^*||
    double compression = 0.0;   // ||U0^* Psi U0 - X||
    double norm_x = 0.0;
    double norm_xi = 0.0;
    double u0_isometry = 0.0;
};
LiftResult lift_commutant(const CovariantRep& rep, const Mat& x, int level, double tol = 1e-8);

}  // namespace opm
