#pragma once

#include "opmodel/fock.hpp"

#include <vector>

namespace opm {

// E^sigma: intertwiners eta : H -> E (x)_sigma H with eta sigma(a) = (phi(a) (x) I) eta,
// a correspondence over sigma(M)'.  basis is orthonormal for the trace inner
// product; structure carries the sigma(M)'-valued data in those coordinates.
struct DualCorrespondence {
    Correspondence base;
    Representation sigma;
    LocalizedSpace loc;
    std::vector<Mat> basis;
    Commutant comm;
    Representation iota;  // sigma(M)' acting on H
    Correspondence structure;

    int dim() const { return static_cast<int>(basis.size()); }
    Mat element(const Vec& coords) const;
    Vec coordinates(const Mat& eta) const;
};

// All X : H -> K with X from(a) = to(a) X, orthonormal for the trace inner
// product.  In standard form these are I_{n_b} (x) Z_b, one matrix unit Z at a time.
std::vector<Mat> intertwiner_basis(const Representation& to, const Representation& from);

DualCorrespondence dual(const Correspondence& e, const Representation& sigma, double eps_null = 1e-10);
double dual_module_residual(const DualCorrespondence& d);

// xi^ : H -> E^sigma (x)_iota H, built from xi^*(eta (x) h) = L_xi^* eta(h).
Mat hat(const DualCorrespondence& d, const LocalizedSpace& dual_loc, const Vec& xi);

// (E1 (x) E2)^sigma -> E2^sigma (x) E1^sigma, eta2 (x) eta1 -> (I (x) eta2) eta1.
// With reversed = true the factors of the balanced tensor product are taken
// in the other order, which is not a module map in general.
struct DualTensorIso {
    Mat map;  // coordinates of E2^s (x) E1^s -> coordinates of (E1 (x) E2)^s
    double inner_residual = 0.0;  // max_u ||map^* G_u map - G'_u||
    int source_dim = 0, target_dim = 0;
};
DualTensorIso dual_tensor_iso(const Correspondence& e1, const Correspondence& e2, const Representation& sigma,
                              bool reversed = false);

// U : F_N(E) (x)_sigma H -> F_N(E^sigma) (x)_iota H, grade by grade.
class FourierTransform {
public:
    FourierTransform() = default;
    FourierTransform(const DualCorrespondence& d, int level);

    const DualCorrespondence& dual() const { return dual_; }
    const FockTower& tower() const { return tower_; }       // over sigma
    const FockTower& dual_tower() const { return dtower_; } // over iota
    int level() const { return level_; }
    const Mat& grade(int k) const { return u_[k]; }
    Mat full() const;
    double unitarity_residual() const;

private:
    DualCorrespondence dual_;
    int level_ = 0;
    FockTower tower_, dtower_;
    std::vector<Mat> u_;
};

// Truncated analytic symbol: coefficients[k] : H -> E^{(x)k} (x) H on the E side
// and fourier[k] = U_k coefficients[k] on the dual side.
struct Symbol {
    std::vector<Mat> coefficients;
    std::vector<Mat> fourier;
};

struct CommutationReport {
    double creation = 0.0;  // on grades <= N-1
    double diagonal = 0.0;
};
CommutationReport commutation_residual(const FockTower& tower, const Mat& psi);

Symbol hat_transform(const FourierTransform& f, const Mat& psi, double tol = 1e-8);
Mat check_transform(const FourierTransform& f, const Symbol& s);
Symbol symbol_from_fourier(const FourierTransform& f, const std::vector<Mat>& fourier);

// sum_k P_k fourier[k] with P_k the generalized powers of point : E^s (x) H -> H.
Mat evaluate_symbol(const FourierTransform& f, const Symbol& s, const Mat& point);

// Dimension of the truncated symbol space, sum_{k<=N} dim (E^{(x)k})^sigma.
int symbol_space_dim(const FockTower& tower);

}  // namespace opm
