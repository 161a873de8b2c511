#pragma once

#include "opmodel/covrep.hpp"

#include <vector>

namespace opm {

// Minimal isometric dilation truncated at level N:
//   K      = H + G_0 + ... + G_N,            G_k = E^{(x)k} (x)_{tau1} D
//   E (x) K = E(x)H + G_1 + ... + G_{N+1}
// V~ is T~ and Delta on the first column, identities G_k -> G_k below, and
// annihilates G_{N+1}.  Ṽ^*Ṽ = I on grades <= N-1 (in fact on all but G_{N+1}).
class IsometricDilation {
public:
    IsometricDilation(const CovariantRep& rep, int level, double eps_null = 1e-10);

    const CovariantRep& rep() const { return rep_; }
    const DefectData& defect() const { return def_; }
    int level() const { return level_; }
    const FockTower& tower_h() const { return tower_h_; }
    const FockTower& tower_d() const { return tower_d_; }

    int k_dim() const { return k_off_.back(); }
    int ek_dim() const { return ek_off_.back(); }
    int num_blocks() const { return static_cast<int>(k_off_.size()) - 1; }  // H, G_0..G_N
    int k_offset(int i) const { return k_off_[i]; }
    int k_block_dim(int i) const { return k_off_[i + 1] - k_off_[i]; }
    int ek_offset(int i) const { return ek_off_[i]; }
    int ek_block_dim(int i) const { return ek_off_[i + 1] - ek_off_[i]; }
    const LocalizedSpace& ek_block(int i) const;  // E (x) K_i

    const Mat& Vtilde() const { return vtilde_; }
    const Representation& rho() const { return rho_; }
    const Representation& rho_e() const { return rho_e_; }  // phi(.) (x) I on E (x) K
    Mat embed_h() const;          // H -> K
    Mat embed_g(int k) const;     // G_k -> K
    Mat embed_gd() const;         // W_D : F_N(E) (x) D -> K, the inclusion of all G_k

    Mat L(const Vec& xi) const;   // K -> E (x) K, k -> xi (x) k
    Mat V(const Vec& xi) const { return vtilde_times(L(xi)); }
    // V~ y and y V~^*, using the sparse block pattern of V~
    Mat vtilde_times(const Mat& y) const;
    Mat times_vtilde_adjoint(const Mat& y) const;
    Mat ampliate(const Mat& x) const;  // I_E (x) x for x in rho(M)'
    // I_E (x) X for X : H' -> K (resp. K -> H') intertwining some rep on H'
    Mat ampliate_into(const Mat& x, const LocalizedSpace& from) const;
    Mat ampliate_from(const LocalizedSpace& to, const Mat& x) const;
    Mat L_map(const Mat& x) const { return times_vtilde_adjoint(vtilde_times(ampliate(x))); }

    double isometry_residual() const;  // on E (x) K minus the top grade
    double dilation_residual() const;  // P_H V(xi)|H - T(xi)
    double covariance_residual() const;

    TruncationLedger ledger() const;

private:
    CovariantRep rep_;
    DefectData def_;
    int level_;
    FockTower tower_h_, tower_d_;
    std::vector<int> k_off_, ek_off_;
    Mat vtilde_;
    Representation rho_, rho_e_;
};

enum class PinfVerdict { ExactZero, Stabilized, Undecided };
const char* to_string(PinfVerdict v);

struct ProjectionChain {
    std::vector<Mat> P;  // P_1 .. P_{N+1}
    std::vector<Mat> Q;  // Q_0 .. Q_{N+1}
    Mat Pinf;            // I - sum Q_k
    PinfVerdict verdict = PinfVerdict::Undecided;
    double orthogonality = 0.0;  // ||S^2 - S|| for S = sum Q_k; zero iff the Q_k are orthogonal
    double pinf_tail = 0.0;      // ||P_N - P_{N+1}||
};
ProjectionChain projection_chain(const IsometricDilation& dil, double tol = 1e-10);

struct WanderingShiftReport {
    double shift = 0.0;   // max ||V(e_p)Q_m - Q_{m+1}V(e_p)||, m <= N-1
    double qinf = 0.0;    // ||V(e_p)Q_inf - Q_inf V(e_p)|| restricted to grades <= N-1
};
WanderingShiftReport check_wandering_shift(const IsometricDilation& dil, const ProjectionChain& chain);

struct WanderingMap {
    Mat W;                         // F_N(E) (x) M -> K
    std::vector<Mat> grades;       // W_0 .. W_N
    FockTower tower;               // over rho|M
    bool wandering = false;
    double overlap = 0.0;          // ||S^2 - S|| for S = sum_n L^n(P_M)
    double isometry_residual = 0.0;
};
WanderingMap wandering_map(const IsometricDilation& dil, const Mat& msub, double tol = 1e-10);

struct K0Data {
    Mat K0;             // orthonormal basis in K
    Representation rho0;
    Mat u;              // K0 -> D_* coordinates
    double isometry_residual = 0.0;
    double intertwining_residual = 0.0;
    double generator_residual = 0.0;  // u Q_0 h - Delta_* h over h in H
};
K0Data k0_and_u(const IsometricDilation& dil, const ProjectionChain& chain);

struct DilationSplit {
    Mat induced;     // basis of sum Q_k K
    Mat coisometric; // basis of P_inf K
    double unitarity_residual = 0.0;  // of V~ restricted to the coisometric part
};
DilationSplit decompose(const IsometricDilation& dil, const ProjectionChain& chain);

}  // namespace opm
