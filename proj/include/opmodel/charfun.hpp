#pragma once

#include "opmodel/dilation.hpp"
#include "opmodel/duality.hpp"

#include <string>
#include <vector>

namespace opm {

// Theta : F_N(E) (x)_{tau1} E1 -> F_N(E) (x)_{tau2} E2, lower triangular and
// Toeplitz in the grades.  For data coming from a representation E1 = D and
// E2 = D_*.
struct CharacteristicData {
    Correspondence E;
    Representation tau1, tau2;
    FockTower tower1, tower2;
    Mat Theta;
    TruncationLedger ledger;
    bool from_rep = false;
    Mat grade0_expected;  // -D_*^* T~ D when from_rep
};

// Intertwining with T_xi (x) I and phi_inf(.) (x) I; creation on grades <= N-1.
CommutationReport intertwining_residual(const CharacteristicData& cd);
double contraction_excess(const CharacteristicData& cd);  // max(0, ||Theta|| - 1)
double grade0_residual(const CharacteristicData& cd);     // from_rep only

// Theta_T = (I (x) u) W_inf^* (I - P_inf) W_D at truncation level dil.level().
CharacteristicData characteristic_operator(const IsometricDilation& dil, double tol = 1e-10);

// Data given by Taylor coefficients c_k : E1 -> E^{(x)k} (x) E2, c_k intertwining
// tau1 with the grade-k representation.
CharacteristicData characteristic_data_from_coefficients(const Correspondence& e, const Representation& tau1,
                                                         const Representation& tau2, const std::vector<Mat>& coeffs,
                                                         int level);

// Grade k column block of Theta below the vacuum, Theta_{k,0}.
Mat taylor_coefficient(const CharacteristicData& cd, int k);

// Theta placed in the corner of G = E0 + E1 + E2, conjugated by U and read off
// as a symbol over E^tau.
struct CharFunction {
    Supplement supp;
    FourierTransform fourier;
    Symbol symbol;
    double corner_residual = 0.0;
};
CharFunction to_function(const CharacteristicData& cd, double tol = 1e-8);

enum class EvalMethod { Series, Resolvent, OperatorSeries };
const char* to_string(EvalMethod m);

struct PointEvaluation {
    Vec xi;
    EvalMethod method = EvalMethod::Series;
    Mat value;          // E1 -> E2 coordinates
    double r = 0.0;     // ||L_xi^* T~^*|| for the resolvent, ||L_xi|| otherwise
    double tail_bound = 0.0;
};

// Sum_k (xi^*)_k fourier_k through the dual tower, compressed to E1 -> E2.
PointEvaluation evaluate_series(const CharFunction& f, const Vec& xi);
// Sum_k L_{xi^{(x)k}}^* Theta_{k,0} on the E side.
PointEvaluation evaluate_operator_series(const CharacteristicData& cd, const Vec& xi);
// -T~|D + Delta_*(I - L_xi^* T~^*)^{-1} L_xi^* Delta|D, in D -> D_* coordinates.
PointEvaluation evaluate_resolvent(const CovariantRep& rep, const DefectData& def, const Vec& xi);

// Generalized power norm ||L_xi|| on E (x)_sigma H; the open unit ball is ||L_xi|| < 1.
double point_norm(const LocalizedSpace& loc, const Vec& xi);

struct PredicateReport {
    Verdict verdict = Verdict::Undecided;
    double residual = 0.0;
    double tail_estimate = 0.0;
    int frontier = 0;
    std::string note;
};
// Frontier used by the predicates: grades <= N/3 see all the rows of Theta
// that carry non-negligible mass when the coefficients decay.
int predicate_frontier(const CharacteristicData& cd);
PredicateReport is_inner(const CharacteristicData& cd, double tol = 1e-10);
PredicateReport is_pure(const CharacteristicData& cd, double eps_null = 1e-10);
PredicateReport is_predictable(const CharacteristicData& cd, double tol = 1e-8, double eps_null = 1e-10);

}  // namespace opm
