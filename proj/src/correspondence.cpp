#include "opmodel/correspondence.hpp"

#include <algorithm>
#include <sstream>

namespace opm {

namespace {

// Index of e_u e_w as a matrix unit, or -1 when the product vanishes.
int unit_product(const Algebra& alg, int u, int w) {
    const auto a = alg.unit_index(u), b = alg.unit_index(w);
    if (a.block != b.block || a.col != b.row) return -1;
    return alg.unit(a.block, a.row, b.col);
}

int unit_adjoint(const Algebra& alg, int u) {
    const auto a = alg.unit_index(u);
    return alg.unit(a.block, a.col, a.row);
}

Mat combine(const std::vector<Mat>& mats, const Vec& coeff, int dim) {
    Mat out = Mat::Zero(dim, dim);
    for (Eigen::Index u = 0; u < coeff.size(); ++u)
        if (coeff(u) != cplx(0.0)) out += coeff(u) * mats[u];
    return out;
}

}  // namespace

Element Correspondence::inner_product(const Vec& x, const Vec& y) const {
    Vec c(algebra.dim());
    for (int u = 0; u < algebra.dim(); ++u) c(u) = x.dot(inner[u] * y);
    return from_coordinates(algebra, c);
}

Mat Correspondence::left_action(const Element& a) const {
    return combine(left, coordinates(algebra, a), dim);
}

Mat Correspondence::right_action(const Element& a) const {
    return combine(right, coordinates(algebra, a), dim);
}

bool ValidationReport::passed() const {
    return std::all_of(axioms.begin(), axioms.end(), [&](const AxiomResidual& r) { return r.residual <= tol; });
}

std::string ValidationReport::first_failure() const {
    for (const auto& r : axioms)
        if (r.residual > tol) {
            std::ostringstream os;
            os << r.axiom << " (residual " << r.residual << ")";
            return os.str();
        }
    return "";
}

ValidationReport validate(const Correspondence& e, double tol) {
    const Algebra& alg = e.algebra;
    const int n = alg.dim(), d = e.dim;
    if (static_cast<int>(e.left.size()) != n || static_cast<int>(e.right.size()) != n ||
        static_cast<int>(e.inner.size()) != n)
        throw Error(ErrorKind::Structural, "correspondence needs one structure matrix per matrix unit");
    for (int u = 0; u < n; ++u)
        for (const Mat* m : {&e.left[u], &e.right[u], &e.inner[u]})
            if (m->rows() != d || m->cols() != d)
                throw Error(ErrorKind::Structural, "structure matrix has the wrong size");

    ValidationReport rep;
    rep.tol = tol;
    const Mat one_l = e.left_action(unit_element(alg));
    const Mat one_r = e.right_action(unit_element(alg));
    double hom = opnorm(one_l - identity(d)), adj = 0.0, rhom = opnorm(one_r - identity(d)), rmod = 0.0, herm = 0.0;
    for (int u = 0; u < n; ++u) {
        const int us = unit_adjoint(alg, u);
        for (int v = 0; v < n; ++v) {
            const int uv = unit_product(alg, u, v);
            const Mat expect_l = uv < 0 ? Mat::Zero(d, d) : e.left[uv];
            hom = std::max(hom, opnorm(e.left[u] * e.left[v] - expect_l));
            // R(e_u e_v) = R(e_v) R(e_u)
            const Mat expect_r = uv < 0 ? Mat::Zero(d, d) : e.right[uv];
            rhom = std::max(rhom, opnorm(e.right[v] * e.right[u] - expect_r));
            // <x, y e_v>_u = sum over w with e_w e_v = e_u of <x, y>_w
            Mat expect = Mat::Zero(d, d);
            for (int w = 0; w < n; ++w)
                if (unit_product(alg, w, v) == u) expect += e.inner[w];
            rmod = std::max(rmod, opnorm(e.inner[u] * e.right[v] - expect));
            // <phi(e_v) x, y> = <x, phi(e_v^*) y>
            adj = std::max(adj, opnorm(e.left[v].adjoint() * e.inner[u] - e.inner[u] * e.left[unit_adjoint(alg, v)]));
        }
        herm = std::max(herm, opnorm(e.inner[u] - e.inner[us].adjoint()));
    }
    double pos = 0.0;
    for (int b = 0; b < alg.num_blocks(); ++b) {
        const int nb = alg.block_size(b);
        Mat g(d * nb, d * nb);
        for (int i = 0; i < nb; ++i)
            for (int j = 0; j < nb; ++j) {
                const Mat& gu = e.inner[alg.unit(b, i, j)];
                for (int p = 0; p < d; ++p)
                    for (int q = 0; q < d; ++q) g(p * nb + i, q * nb + j) = gu(p, q);
            }
        if (g.size() == 0) continue;
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
        pos = std::max(pos, -es.eigenvalues().minCoeff());
    }
    rep.axioms = {{"left *-hom", hom},     {"left adjointable", adj}, {"right module", rhom},
                  {"right linearity", rmod}, {"hermitian", herm},      {"positivity", std::max(0.0, pos)}};
    return rep;
}

void require_valid(const Correspondence& e, double tol) {
    const ValidationReport r = validate(e, tol);
    if (!r.passed()) throw Error(ErrorKind::Validation, "correspondence axiom failed: " + r.first_failure());
}

Correspondence identity_correspondence(const Algebra& alg) {
    const int n = alg.dim();
    Correspondence e{alg, n, {}, {}, {}};
    for (int u = 0; u < n; ++u) {
        Mat l = Mat::Zero(n, n), r = Mat::Zero(n, n);
        for (int v = 0; v < n; ++v) {
            const int uv = unit_product(alg, u, v);
            if (uv >= 0) l(uv, v) = 1.0;
            const int vu = unit_product(alg, v, u);
            if (vu >= 0) r(vu, v) = 1.0;
        }
        e.left.push_back(l);
        e.right.push_back(r);
        // (x^* y)_{ij} = sum_k conj(x_{ki}) y_{kj}
        const auto ix = alg.unit_index(u);
        Mat g = Mat::Zero(n, n);
        for (int k = 0; k < alg.block_size(ix.block); ++k)
            g(alg.unit(ix.block, k, ix.row), alg.unit(ix.block, k, ix.col)) = 1.0;
        e.inner.push_back(g);
    }
    return e;
}

Correspondence from_endomorphism(const Algebra& alg, const Mat& alpha, double tol) {
    const int n = alg.dim();
    if (alpha.rows() != n || alpha.cols() != n)
        throw Error(ErrorKind::Structural, "endomorphism table must be dim(M) x dim(M)");
    double res = (alpha * coordinates(alg, unit_element(alg)) - coordinates(alg, unit_element(alg))).norm();
    for (int u = 0; u < n; ++u) {
        const Element au = from_coordinates(alg, alpha.col(u));
        res = std::max(res, (alpha.col(unit_adjoint(alg, u)) - coordinates(alg, adjoint(au))).norm());
        for (int v = 0; v < n; ++v) {
            const int uv = unit_product(alg, u, v);
            const Vec lhs = uv < 0 ? Vec(Vec::Zero(n)) : Vec(alpha.col(uv));
            const Element av = from_coordinates(alg, alpha.col(v));
            res = std::max(res, (lhs - coordinates(alg, multiply(au, av))).norm());
        }
    }
    if (res > tol)
        throw Error(ErrorKind::Validation, "alpha is not a unital *-endomorphism (residual " + std::to_string(res) + ")");
    Correspondence e = identity_correspondence(alg);
    const std::vector<Mat> base = e.left;
    for (int u = 0; u < n; ++u) e.left[u] = combine(base, alpha.col(u), n);
    return e;
}

Correspondence from_graph(int vertices, const std::vector<Edge>& edges) {
    if (vertices < 1) throw Error(ErrorKind::Validation, "graph needs at least one vertex");
    for (const auto& ed : edges)
        if (ed.source < 0 || ed.source >= vertices || ed.range < 0 || ed.range >= vertices)
            throw Error(ErrorKind::Validation, "edge refers to a missing vertex");
    const Algebra alg(std::vector<int>(vertices, 1));
    const int d = static_cast<int>(edges.size());
    Correspondence e{alg, d, {}, {}, {}};
    for (int v = 0; v < vertices; ++v) {
        Mat l = Mat::Zero(d, d), s = Mat::Zero(d, d);
        for (int k = 0; k < d; ++k) {
            if (edges[k].range == v) l(k, k) = 1.0;
            if (edges[k].source == v) s(k, k) = 1.0;
        }
        e.left.push_back(l);
        e.right.push_back(s);
        e.inner.push_back(s);
    }
    return e;
}

Correspondence free_correspondence(int n) {
    if (n < 1) throw Error(ErrorKind::Validation, "free correspondence needs n >= 1");
    return Correspondence{Algebra({1}), n, {identity(n)}, {identity(n)}, {identity(n)}};
}

Correspondence direct_sum(const Correspondence& e, const Correspondence& f) {
    if (e.algebra != f.algebra) throw Error(ErrorKind::Structural, "direct_sum: algebra mismatch");
    Correspondence s{e.algebra, e.dim + f.dim, {}, {}, {}};
    for (int u = 0; u < e.algebra.dim(); ++u) {
        s.left.push_back(block_diag({e.left[u], f.left[u]}));
        s.right.push_back(block_diag({e.right[u], f.right[u]}));
        s.inner.push_back(block_diag({e.inner[u], f.inner[u]}));
    }
    return s;
}

namespace {

// Orthonormal eigenvectors of a PSD Gram for eigenvalues above eps_rel*max.
// Diagonal Grams keep coordinate vectors so that exact inputs stay exact.
struct GramFactor {
    Mat basis;
    Eigen::VectorXd values;
};

GramFactor factor_gram(const Mat& gram, double eps_null, double eps_psd, const char* what) {
    const Eigen::Index n = gram.rows();
    GramFactor out;
    if (n == 0) {
        out.basis = Mat(0, 0);
        return out;
    }
    const Mat off = gram - Mat(gram.diagonal().asDiagonal());
    Eigen::VectorXd ev;
    Mat vecs;
    if (off.cwiseAbs().maxCoeff() == 0.0) {
        ev = gram.diagonal().real();
        vecs = identity(static_cast<int>(n));
    } else {
        Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram + gram.adjoint()));
        ev = es.eigenvalues();
        vecs = es.eigenvectors();
    }
    const double vmax = ev.maxCoeff();
    if (ev.minCoeff() < -eps_psd * std::max(1.0, vmax))
        throw Error(ErrorKind::Validation,
                    std::string(what) + ": Gram has eigenvalue " + std::to_string(ev.minCoeff()));
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (vmax <= 0.0) break;
        const double rel = ev(i) / vmax;
        if (rel > eps_null * 1e-2 && rel < eps_null * 1e2)
            throw Error(ErrorKind::Numerical, std::string(what) + ": ambiguous rank, relative eigenvalue " +
                                                  std::to_string(rel) + " (condition estimate " +
                                                  std::to_string(1.0 / rel) + ")");
        if (rel > eps_null) keep.push_back(i);
    }
    out.basis.resize(n, static_cast<Eigen::Index>(keep.size()));
    out.values.resize(static_cast<Eigen::Index>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) {
        out.basis.col(k) = vecs.col(keep[k]);
        out.values(k) = ev(keep[k]);
    }
    return out;
}

}  // namespace

TensorResult tensor_with_quotient(const Correspondence& e, const Correspondence& f, double eps_null) {
    if (e.algebra != f.algebra) throw Error(ErrorKind::Structural, "tensor: algebra mismatch");
    const Algebra& alg = e.algebra;
    const int n = alg.dim(), d = e.dim * f.dim;
    std::vector<Mat> g(n, Mat::Zero(d, d));
    for (int u = 0; u < n; ++u)
        for (int w = 0; w < n; ++w) {
            if (e.inner[w].cwiseAbs().maxCoeff() == 0.0) continue;
            g[u] += kron(e.inner[w], f.inner[u] * f.left[w]);
        }
    Mat scalar = Mat::Zero(d, d);
    for (int b = 0; b < alg.num_blocks(); ++b)
        for (int i = 0; i < alg.block_size(b); ++i) scalar += g[alg.unit(b, i, i)];
    const GramFactor gf = factor_gram(scalar, eps_null, 1e-9, "tensor");
    const Mat& v = gf.basis;
    const int k = static_cast<int>(v.cols());
    TensorResult out;
    out.quotient = v.adjoint();
    Correspondence& p = out.product;
    p.algebra = alg;
    p.dim = k;
    for (int u = 0; u < n; ++u) {
        p.left.push_back(v.adjoint() * kron(e.left[u], identity(f.dim)) * v);
        p.right.push_back(v.adjoint() * kron(identity(e.dim), f.right[u]) * v);
        p.inner.push_back(v.adjoint() * g[u] * v);
    }
    return out;
}

Correspondence tensor(const Correspondence& e, const Correspondence& f, double eps_null) {
    return tensor_with_quotient(e, f, eps_null).product;
}

Mat LocalizedSpace::create(int p) const { return factor.middleCols(p * h_dim, h_dim); }

Mat LocalizedSpace::create(const Vec& xi) const {
    if (xi.size() != source_dim) throw Error(ErrorKind::Structural, "vector is not in the correspondence");
    Mat l = Mat::Zero(dim, h_dim);
    for (int p = 0; p < source_dim; ++p)
        if (xi(p) != cplx(0.0)) l += xi(p) * create(p);
    return l;
}

Mat localization_gram(const Correspondence& e, const Representation& sigma) {
    if (e.algebra != sigma.algebra) throw Error(ErrorKind::Structural, "localize: algebra mismatch");
    const int h = sigma.dim();
    Mat g = Mat::Zero(e.dim * h, e.dim * h);
    for (int u = 0; u < e.algebra.dim(); ++u) {
        if (e.inner[u].cwiseAbs().maxCoeff() == 0.0) continue;
        g += kron(e.inner[u], rep_unit(sigma, u));
    }
    return g;
}

LocalizedSpace localize(const Correspondence& e, const Representation& sigma, double eps_null, double eps_psd) {
    LocalizedSpace loc;
    loc.source_dim = e.dim;
    loc.h_dim = sigma.dim();
    loc.gram = localization_gram(e, sigma);
    const GramFactor gf = factor_gram(loc.gram, eps_null, eps_psd, "localize");
    loc.dim = static_cast<int>(gf.basis.cols());
    const Eigen::VectorXd s = gf.values.cwiseSqrt();
    loc.factor = s.cast<cplx>().asDiagonal() * gf.basis.adjoint();
    loc.lift = gf.basis * s.cwiseInverse().cast<cplx>().asDiagonal();
    if (loc.factor.cols() == 0) {
        loc.factor = Mat::Zero(loc.dim, e.dim * loc.h_dim);
        loc.lift = Mat::Zero(e.dim * loc.h_dim, loc.dim);
    }
    std::vector<Mat> images;
    for (int u = 0; u < e.algebra.dim(); ++u)
        images.push_back(loc.factor * kron(e.left[u], identity(loc.h_dim)) * loc.lift);
    loc.rep = identify_rep(e.algebra, images, loc.dim);
    return loc;
}

Mat ampliate(const LocalizedSpace& to, const Mat& x, const LocalizedSpace& from) {
    if (to.source_dim != from.source_dim || x.rows() != to.h_dim || x.cols() != from.h_dim)
        throw Error(ErrorKind::Structural, "ampliate: shape mismatch");
    Mat out = Mat::Zero(to.dim, from.dim);
    for (int p = 0; p < to.source_dim; ++p)
        out += to.factor.middleCols(p * to.h_dim, to.h_dim) * x * from.lift.middleRows(p * from.h_dim, from.h_dim);
    return out;
}

}  // namespace opm
