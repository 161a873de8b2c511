#pragma once

#include "opmodel/fock.hpp"

#include <string>
#include <vector>

namespace opm {

enum class Verdict { False, True, Undecided };
const char* to_string(Verdict v);

// (sigma, T~) with T~ : E (x)_sigma H -> H contractive and intertwining
// phi(.) (x) I with sigma.
struct CovariantRep {
    Correspondence E;
    Representation sigma;
    LocalizedSpace loc;  // E (x)_sigma H, same coordinates as FockTower grade 1
    Mat Ttilde;

    int h_dim() const { return sigma.dim(); }
    Mat T(const Vec& xi) const { return Ttilde * loc.create(xi); }
};

CovariantRep make_covrep(const Correspondence& e, const Representation& sigma, const Mat& ttilde,
                         double tol = 1e-10);
double covariance_residual(const CovariantRep& rep);

// T~_0 = I, ..., T~_n as maps grade k of the tower -> H.
std::vector<Mat> generalized_powers(const CovariantRep& rep, const FockTower& tower, int n);

struct DefectData {
    Mat Delta;      // on E (x) H
    Mat DeltaStar;  // on H
    Mat D;          // orthonormal basis of the closed range of Delta
    Mat Dstar;      // orthonormal basis of the closed range of Delta_*
    Representation tau1, tau2;
};
DefectData defects(const CovariantRep& rep, double eps_null = 1e-10, double eps_psd = 1e-9);

struct ClassificationReport {
    int level = 0;
    double norm = 0.0;         // ||T~||
    double decay = 0.0;        // ||T~_N T~_N^*||
    std::vector<int> h2_dims;  // dim of the coisometric candidate after n = 1..N
    bool stabilized = false;
    Mat H2;
    Verdict is_C0 = Verdict::Undecided;
    Verdict is_cnc = Verdict::Undecided;
    std::string c0_reason;
};
ClassificationReport classify(const CovariantRep& rep, int level, double tol = 1e-10);

struct CncDecomposition {
    Mat H1, H2;
    Representation sigma1, sigma2;
    Mat T1, T2, X;
    double upper_right = 0.0;  // ||J1^* T~ (I (x) J2)||, zero when H2 is invariant for T^*
    double reconstruction = 0.0;
};
CncDecomposition cnc_decomposition(const CovariantRep& rep, const ClassificationReport& report);

}  // namespace opm
