#include "opmodel/duality.hpp"

#include <algorithm>
#include <cmath>

namespace opm {

namespace {

Mat basis_of(const Representation& r) { return r.basis_change.size() == 0 ? identity(r.dim()) : r.basis_change; }

cplx trace_inner(const Mat& a, const Mat& b) { return (a.adjoint() * b).trace(); }

}  // namespace

std::vector<Mat> intertwiner_basis(const Representation& to, const Representation& from) {
    if (to.algebra != from.algebra) throw Error(ErrorKind::Structural, "representations over different algebras");
    const Algebra& alg = to.algebra;
    const Mat bt = basis_of(to), bf = basis_of(from);
    std::vector<Mat> out;
    int ot = 0, of = 0;
    for (int b = 0; b < alg.num_blocks(); ++b) {
        const int n = alg.block_size(b), mt = to.mult[b], mf = from.mult[b];
        const double s = 1.0 / std::sqrt(static_cast<double>(n));
        for (int r = 0; r < mt; ++r)
            for (int c = 0; c < mf; ++c) {
                Mat y = Mat::Zero(to.dim(), from.dim());
                for (int i = 0; i < n; ++i) y(ot + i * mt + r, of + i * mf + c) = s;
                out.push_back(bt * y * bf.adjoint());
            }
        ot += n * mt;
        of += n * mf;
    }
    return out;
}

Mat DualCorrespondence::element(const Vec& coords) const {
    if (coords.size() != dim()) throw Error(ErrorKind::Structural, "dual element: wrong coordinate length");
    Mat out = Mat::Zero(loc.dim, sigma.dim());
    for (int i = 0; i < dim(); ++i) out += coords(i) * basis[i];
    return out;
}

Vec DualCorrespondence::coordinates(const Mat& eta) const {
    Vec x(dim());
    for (int i = 0; i < dim(); ++i) x(i) = trace_inner(basis[i], eta);
    return x;
}

DualCorrespondence dual(const Correspondence& e, const Representation& sigma, double eps_null) {
    LocalizedSpace loc = localize(e, sigma, eps_null);
    std::vector<Mat> basis = intertwiner_basis(loc.rep, sigma);
    Commutant comm = commutant(sigma);
    Representation iota = comm.embedding;
    const Algebra& ca = comm.algebra;
    const int d = static_cast<int>(basis.size());

    Correspondence s;
    s.algebra = ca;
    s.dim = d;
    for (int u = 0; u < ca.dim(); ++u) {
        const Mat su = rep_unit(iota, u);
        const Mat amp = ampliate(loc, su, loc);
        Mat l(d, d), r(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                l(i, j) = trace_inner(basis[i], amp * basis[j]);
                r(i, j) = trace_inner(basis[i], basis[j] * su);
            }
        s.left.push_back(l);
        s.right.push_back(r);
        s.inner.push_back(Mat::Zero(d, d));
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Vec c = opm::coordinates(ca, commutant_element(comm, sigma, basis[i].adjoint() * basis[j]));
            for (int u = 0; u < ca.dim(); ++u) s.inner[u](i, j) = c(u);
        }
    return DualCorrespondence{e, sigma, std::move(loc), std::move(basis), std::move(comm), std::move(iota), std::move(s)};
}

double dual_module_residual(const DualCorrespondence& d) {
    double worst = 0.0;
    for (const auto& a : validate(d.structure).axioms) worst = std::max(worst, a.residual);
    return worst;
}

Mat hat(const DualCorrespondence& d, const LocalizedSpace& dual_loc, const Vec& xi) {
    const int h = d.sigma.dim();
    const Mat lstar = d.loc.create(xi).adjoint();
    Mat pre(h, d.dim() * h);
    for (int p = 0; p < d.dim(); ++p) pre.middleCols(p * h, h) = lstar * d.basis[p];
    return (pre * dual_loc.lift).adjoint();
}

DualTensorIso dual_tensor_iso(const Correspondence& e1, const Correspondence& e2, const Representation& sigma,
                              bool reversed) {
    const DualCorrespondence d1 = dual(e1, sigma), d2 = dual(e2, sigma);
    const TensorResult t12 = tensor_with_quotient(e1, e2);
    const DualCorrespondence d12 = dual(t12.product, sigma);
    const TensorResult src = reversed ? tensor_with_quotient(d1.structure, d2.structure)
                                      : tensor_with_quotient(d2.structure, d1.structure);
    const int h = sigma.dim();

    // Omega : E12 (x)_sigma H -> E1 (x) (E2 (x)_sigma H)
    const LocalizedSpace& l2 = d2.loc;
    const LocalizedSpace l1 = localize(e1, l2.rep);
    Mat a = Mat::Zero(l1.dim, t12.product.dim * h);
    for (int j = 0; j < t12.product.dim; ++j)
        for (int p1 = 0; p1 < e1.dim; ++p1)
            for (int p2 = 0; p2 < e2.dim; ++p2) {
                const cplx c = std::conj(t12.quotient(j, p1 * e2.dim + p2));
                if (std::abs(c) == 0.0) continue;
                a.middleCols(j * h, h) +=
                    c * l1.factor.middleCols(p1 * l2.dim, l2.dim) * l2.factor.middleCols(p2 * h, h);
            }
    const Mat omega = a * d12.loc.lift;

    const int n1 = d1.dim(), n2 = d2.dim();
    std::vector<Mat> images(static_cast<size_t>(n1) * n2);
    for (int q = 0; q < n2; ++q) {
        const Mat amp = ampliate(l1, d2.basis[q], d1.loc);
        for (int p = 0; p < n1; ++p) images[q * n1 + p] = omega.adjoint() * amp * d1.basis[p];
    }

    DualTensorIso out;
    out.source_dim = src.product.dim;
    out.target_dim = d12.dim();
    out.map = Mat::Zero(out.target_dim, out.source_dim);
    for (int j = 0; j < out.source_dim; ++j) {
        Mat x = Mat::Zero(d12.loc.dim, h);
        for (int q = 0; q < n2; ++q)
            for (int p = 0; p < n1; ++p) {
                const int amb = reversed ? p * n2 + q : q * n1 + p;
                const cplx c = std::conj(src.quotient(j, amb));
                if (std::abs(c) != 0.0) x += c * images[q * n1 + p];
            }
        out.map.col(j) = d12.coordinates(x);
    }
    for (size_t u = 0; u < src.product.inner.size(); ++u)
        out.inner_residual = std::max(out.inner_residual, residual(out.map.adjoint() * d12.structure.inner[u] * out.map,
                                                                   src.product.inner[u]));
    return out;
}

FourierTransform::FourierTransform(const DualCorrespondence& d, int level)
    : dual_(d), level_(level), tower_(d.base, d.sigma, level), dtower_(d.structure, d.iota, level) {
    const int h = d.sigma.dim();
    std::vector<Mat> ustar{identity(h)};
    for (int k = 1; k <= level; ++k) {
        const int prev = dtower_.grade_dim(k - 1);
        Mat pre(tower_.grade_dim(k), d.dim() * prev);
        for (int p = 0; p < d.dim(); ++p)
            pre.middleCols(p * prev, prev) = ampliate_power(tower_, 1, d.basis[p], tower_, 0, k - 1) * ustar[k - 1];
        ustar.push_back(pre * dtower_.localized(k).lift);
    }
    for (const auto& m : ustar) u_.push_back(m.adjoint());
}

Mat FourierTransform::full() const { return block_diag(u_); }

double FourierTransform::unitarity_residual() const {
    double worst = 0.0;
    for (const auto& u : u_) {
        worst = std::max(worst, residual(u.adjoint() * u, identity(static_cast<int>(u.cols()))));
        worst = std::max(worst, residual(u * u.adjoint(), identity(static_cast<int>(u.rows()))));
    }
    return worst;
}

CommutationReport commutation_residual(const FockTower& tower, const Mat& psi) {
    const int n = tower.dim();
    if (psi.rows() != n || psi.cols() != n) throw Error(ErrorKind::Structural, "operator does not act on the tower");
    CommutationReport r;
    const int lower = tower.offset(tower.level());  // columns of grades <= N-1
    const Correspondence& e = tower.base();
    for (int p = 0; p < e.dim; ++p) {
        Vec xi = Vec::Zero(e.dim);
        xi(p) = 1.0;
        const Mat t = tower.creation_operator(xi);
        r.creation = std::max(r.creation, opnorm((t * psi - psi * t).leftCols(lower)));
    }
    for (int u = 0; u < e.algebra.dim(); ++u) {
        const Mat f = tower.phi_infty(matrix_unit(e.algebra, u));
        r.diagonal = std::max(r.diagonal, opnorm(f * psi - psi * f));
    }
    return r;
}

Symbol hat_transform(const FourierTransform& f, const Mat& psi, double tol) {
    const FockTower& t = f.tower();
    const CommutationReport c = commutation_residual(t, psi);
    if (c.creation > tol || c.diagonal > tol)
        throw Error(ErrorKind::Precondition, "operator does not commute with the induced representation (residuals " +
                                                 std::to_string(c.creation) + ", " + std::to_string(c.diagonal) + ")");
    Symbol s;
    for (int k = 0; k <= t.level(); ++k) {
        s.coefficients.push_back(block(psi, t, k, t, 0));
        s.fourier.push_back(f.grade(k) * s.coefficients.back());
    }
    return s;
}

Mat check_transform(const FourierTransform& f, const Symbol& s) {
    const FockTower& t = f.tower();
    const int n = t.level();
    Mat psi = Mat::Zero(t.dim(), t.dim());
    for (int k = 0; k <= n && k < static_cast<int>(s.coefficients.size()); ++k)
        for (int j = 0; j + k <= n; ++j)
            psi.block(t.offset(j + k), t.offset(j), t.grade_dim(j + k), t.grade_dim(j)) =
                ampliate_power(t, k, s.coefficients[k], t, 0, j);
    return psi;
}

Symbol symbol_from_fourier(const FourierTransform& f, const std::vector<Mat>& fourier) {
    if (static_cast<int>(fourier.size()) > f.level() + 1)
        throw Error(ErrorKind::Structural, "symbol longer than the truncation level");
    Symbol s;
    s.fourier = fourier;
    for (size_t k = 0; k < fourier.size(); ++k) s.coefficients.push_back(f.grade(static_cast<int>(k)).adjoint() * fourier[k]);
    return s;
}

Mat evaluate_symbol(const FourierTransform& f, const Symbol& s, const Mat& point) {
    const FockTower& dt = f.dual_tower();
    if (point.rows() != dt.grade_dim(0) || (dt.level() >= 1 && point.cols() != dt.grade_dim(1)))
        throw Error(ErrorKind::Structural, "evaluation point has the wrong shape");
    if (opnorm(point) > 1.0 + 1e-12) throw Error(ErrorKind::Domain, "evaluation point outside the closed unit ball");
    Mat pk = identity(dt.grade_dim(0));
    Mat value = pk * s.fourier[0];
    for (int k = 1; k < static_cast<int>(s.fourier.size()); ++k) {
        pk = point * ampliate_power(dt, 0, pk, dt, k - 1, 1);
        value += pk * s.fourier[k];
    }
    return value;
}

int symbol_space_dim(const FockTower& tower) {
    int total = 0;
    const Representation& r0 = tower.rep(0);
    for (int k = 0; k <= tower.level(); ++k)
        for (int b = 0; b < r0.algebra.num_blocks(); ++b) total += tower.rep(k).mult[b] * r0.mult[b];
    return total;
}

}  // namespace opm
