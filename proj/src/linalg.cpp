#include "opmodel/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace opm {

double opnorm(const Mat& a) {
    if (a.size() == 0) return 0.0;
    const Mat g = a.cols() <= a.rows() ? Mat(a.adjoint() * a) : Mat(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double residual(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorKind::Structural, "residual: shape mismatch");
    return opnorm(a - b);
}

Mat identity(int n) { return Mat::Identity(n, n); }

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Mat block_diag(const std::vector<Mat>& blocks) {
    Eigen::Index r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    Mat out = Mat::Zero(r, c);
    r = c = 0;
    for (const auto& b : blocks) {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

Mat hstack(const std::vector<Mat>& blocks, int rows) {
    Eigen::Index c = 0;
    for (const auto& b : blocks) c += b.cols();
    Mat out(rows, c);
    c = 0;
    for (const auto& b : blocks) {
        out.middleCols(c, b.cols()) = b;
        c += b.cols();
    }
    return out;
}

Mat psd_sqrt(const Mat& a, double eps_psd) {
    if (a.size() == 0) return a;
    const Mat h = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    Eigen::VectorXd ev = es.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -eps_psd * scale)
            throw Error(ErrorKind::Numerical,
                        "psd_sqrt: eigenvalue " + std::to_string(ev(i)) + " below -eps_psd");
        ev(i) = std::sqrt(std::max(0.0, ev(i)));
    }
    return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

PsdRoot psd_root_range(const Mat& a, double eps_null, double eps_psd) {
    PsdRoot out;
    if (a.size() == 0) {
        out.root = a;
        out.range = Mat(a.rows(), 0);
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.adjoint()));
    const Eigen::VectorXd& ev = es.eigenvalues();
    Eigen::VectorXd r(ev.size());
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        if (ev(i) < -eps_psd)
            throw Error(ErrorKind::Numerical,
                        "psd_root_range: eigenvalue " + std::to_string(ev(i)) + " below -eps_psd");
        if (ev(i) > eps_null) {
            r(i) = std::sqrt(ev(i));
            keep.push_back(i);
        } else {
            r(i) = 0.0;
        }
    }
    out.root = es.eigenvectors() * r.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    out.range.resize(a.rows(), static_cast<Eigen::Index>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) out.range.col(k) = es.eigenvectors().col(keep[k]);
    return out;
}

namespace {
int numeric_rank(const Eigen::VectorXd& sv, double eps_rel) {
    if (sv.size() == 0) return 0;
    const double smax = sv(0);
    if (smax <= 1e-300) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > eps_rel * smax) ++r;
    return r;
}
}  // namespace

Mat range_basis(const Mat& a, double eps_rel) {
    if (a.size() == 0) return Mat(a.rows(), 0);
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinU);
    const int r = numeric_rank(svd.singularValues(), eps_rel);
    return svd.matrixU().leftCols(r);
}

Mat null_basis(const Mat& a, double eps_rel) {
    const Eigen::Index n = a.cols();
    if (n == 0) return Mat(0, 0);
    if (a.rows() == 0) return identity(static_cast<int>(n));
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeFullV);
    const int r = numeric_rank(svd.singularValues(), eps_rel);
    return svd.matrixV().rightCols(n - r);
}

Mat orth_complement(const Mat& basis, int n, double eps_rel) {
    if (basis.cols() == 0) return identity(n);
    const Mat p = identity(n) - basis * basis.adjoint();
    return range_basis(p, eps_rel);
}

Mat pinv(const Mat& a, double eps_rel) {
    if (a.size() == 0) return Mat::Zero(a.cols(), a.rows());
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const int r = numeric_rank(sv, eps_rel);
    Eigen::VectorXcd inv(r);
    for (int i = 0; i < r; ++i) inv(i) = 1.0 / sv(i);
    return svd.matrixV().leftCols(r) * inv.asDiagonal() * svd.matrixU().leftCols(r).adjoint();
}

Mat eigenspace(const Mat& h, double value, double eps) {
    if (h.size() == 0) return Mat(h.rows(), 0);
    if ((h - Mat(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0) {
        std::vector<Eigen::Index> keep;
        for (Eigen::Index i = 0; i < h.rows(); ++i)
            if (std::abs(h(i, i).real() - value) <= eps) keep.push_back(i);
        Mat out = Mat::Zero(h.rows(), static_cast<Eigen::Index>(keep.size()));
        for (size_t k = 0; k < keep.size(); ++k) out(keep[k], k) = 1.0;
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()(i) - value) <= eps) keep.push_back(i);
    Mat out(h.rows(), static_cast<Eigen::Index>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) out.col(k) = es.eigenvectors().col(keep[k]);
    return out;
}

Mat projector(const Mat& basis) { return basis * basis.adjoint(); }

double subspace_distance(const Mat& a, const Mat& b) {
    return opnorm(projector(a) - projector(b));
}

Mat polar_unitary(const Mat& a) {
    if (a.size() == 0) return a;
    Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Index k = std::min(a.rows(), a.cols());
    return svd.matrixU().leftCols(k) * svd.matrixV().leftCols(k).adjoint();
}

}  // namespace opm
