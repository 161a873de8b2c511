#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace opm {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Error categories map one-to-one onto CLI exit codes (see tools/).
enum class ErrorKind { Structural, Validation, Precondition, Numerical, Undecided, Domain, Resource, Parse };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

struct Tolerances {
    double null = 1e-10;  // relative rank threshold
    double psd = 1e-9;    // admissible negative eigenvalue before PSD roots fail
    double check = 1e-10; // default residual tolerance
};

double opnorm(const Mat& a);
double residual(const Mat& a, const Mat& b);  // ||a - b|| in operator norm; 0 for empty

Mat identity(int n);
Mat kron(const Mat& a, const Mat& b);
Mat block_diag(const std::vector<Mat>& blocks);
Mat hstack(const std::vector<Mat>& blocks, int rows);

Mat psd_sqrt(const Mat& a, double eps_psd);
Mat range_basis(const Mat& a, double eps_rel);
Mat null_basis(const Mat& a, double eps_rel);
Mat orth_complement(const Mat& basis, int n, double eps_rel = 1e-10);
Mat pinv(const Mat& a, double eps_rel);

// Eigenvectors of the Hermitian matrix h whose eigenvalue lies within eps of value.
Mat eigenspace(const Mat& h, double value, double eps);

Mat projector(const Mat& basis);
double subspace_distance(const Mat& a, const Mat& b);

// Square root of a PSD matrix together with an orthonormal basis of its range.
// Eigenvalues below eps_null are treated as exact zeros so that ranges are
// stable under rounding (the root of 1e-17 would otherwise be 3e-9).
struct PsdRoot {
    Mat root;
    Mat range;
};
PsdRoot psd_root_range(const Mat& a, double eps_null, double eps_psd);

// Unitary factor of the polar decomposition.
Mat polar_unitary(const Mat& a);

}  // namespace opm
