#pragma once

#include "opmodel/charfun.hpp"

#include <vector>

namespace opm {

// E = _alpha M with a covariant representation determined by t = T(1):
// T(xi) = t sigma(xi) and t sigma(alpha(a)) = sigma(a) t.
struct CrossedData {
    Algebra M;
    Mat alpha;  // column u is alpha(e_u)
    Representation sigma;
    Mat t;
};

// Throws Validation when alpha is not a unital *-endomorphism, when t fails the
// intertwining relation or when ||t|| > 1.
CrossedData make_crossed(const Algebra& m, const Mat& alpha, const Representation& sigma, const Mat& t,
                         double tol = 1e-10);
double crossed_intertwining_residual(const CrossedData& c);
Correspondence crossed_correspondence(const CrossedData& c);
CovariantRep crossed_rep(const CrossedData& c, double tol = 1e-10);

// tau(alpha^k(a)) for a given by its coordinates.
Mat rep_alpha_power(const Representation& tau, const Mat& alpha, int k, const Vec& a);

// F_N(E) (x)_tau D -> l^2_{0..N}(D) grade by grade:
//   W_k(xi_1 (x) ... (x) xi_k (x) d) = tau(alpha^{k-1}(xi_1) ... alpha(xi_{k-1}) xi_k) d
struct Ell2Identification {
    std::vector<Mat> grades;
    Mat W;
    double unitarity = 0.0;
    double shift = 0.0;     // W (T_xi (x) I) W^* against the weighted shift S(xi)
    double diagonal = 0.0;  // W (phi_inf(a) (x) I) W^* against psi(a)
};
Ell2Identification ell2_identification(const Mat& alpha, const FockTower& tower);

// (S(xi) x)(k) = tau(alpha^{k-1}(xi)) x(k-1) and (psi(a) x)(k) = tau(alpha^k(a)) x(k).
Mat weighted_shift(const Representation& tau, const Mat& alpha, const Vec& xi, int level);
Mat diagonal_action(const Representation& tau, const Mat& alpha, const Vec& a, int level);

// Operators on l^2_{0..N}(H) commuting with the weighted shifts and psi are the
// lower triangular block Toeplitz matrices [R_{i-j}] with
//   R_k sigma(a) = sigma(alpha^k(a)) R_k.
struct ToeplitzCheck {
    Verdict verdict = Verdict::False;
    double triangular = 0.0;   // norm of the strictly upper part
    double toeplitz = 0.0;     // spread along each diagonal
    double relation = 0.0;     // worst R_k sigma(a) - sigma(alpha^k(a)) R_k
    std::vector<Mat> symbol;   // R_0..R_N, read from the first block column
};
ToeplitzCheck toeplitz_commutant_check(const CrossedData& c, const Mat& r, int level, double tol = 1e-10);
Mat assemble_toeplitz(const std::vector<Mat>& symbol, int level);
// Commutation with every S(e_p) (block columns <= N-1) and psi(e_u).
double toeplitz_commutation_residual(const CrossedData& c, const Mat& r, int level);
// dim{z : z sigma(a) = sigma(alpha^k(a)) z} summed over k <= N, by a dense null space.
int toeplitz_symbol_dim(const CrossedData& c, int level);

// Theta_t(lambda) = -t + lambda Delta_*(I - lambda t^*)^{-1} Delta on H.
Mat classical_charfun(const Mat& t, cplx lambda);
// -t, Delta_* Delta, Delta_* t^* Delta, Delta_* (t^*)^2 Delta, ...
std::vector<Mat> classical_coefficients(const Mat& t, int count);

struct SzNFPoint {
    cplx z;
    double deviation = 0.0;
};
struct SzNFComparison {
    int level = 0;
    std::vector<SzNFPoint> points;
    std::vector<Mat> model_values;      // Theta^_T(z xi_0) as an operator on H
    std::vector<Mat> classical_values;  // Theta_t(conj z) P_D
    double max_deviation = 0.0;
    double r = 0.0;                     // max |z| ||t||
    double tail_bound = 0.0;            // r^{N+1}/(1-r)
    double taylor = 0.0;                // worst coefficient mismatch, grades 0..N
};
// Requires t to be c.n.c.; throws Domain for grid points with |z| >= 1.
SzNFComparison sznf_compare(const CrossedData& c, const std::vector<cplx>& grid, int level, double tol = 1e-10);

// radial x angular points rho e^{i theta}, rho = r (j+1)/radial, theta = 2 pi k/angular.
std::vector<cplx> polar_grid(double r, int radial, int angular);

struct BilateralReport {
    int level = 0;
    int frontier = 0;            // grades 0..frontier carry the comparison
    double toeplitz = 0.0;       // l^2 picture of Theta against its constant diagonals
    double norm_identity = 0.0;  // ||(Delta~ iota)^*(Delta~ iota) - Delta^* Delta|| on the frontier
    double root_shift = 0.0;     // ||(Delta~ iota - iota Delta) on the frontier||
    double window_excess = 0.0;  // max(0, -lambda_min(I - Theta~^* Theta~))
    double tail_bound = 0.0;
};
// Theta~ on l^2_{-N..N} from the symbol of Theta, Delta~ = (I - Theta~^* Theta~)^{1/2}.
BilateralReport bilateral_extension_check(const CrossedData& c, int level, double tol = 1e-10);

}  // namespace opm
