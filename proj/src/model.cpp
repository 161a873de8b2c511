#include "opmodel/model.hpp"

#include <algorithm>
#include <cmath>

namespace opm {

namespace {

Mat gradewise(const FockTower& to, const Mat& x, const FockTower& from) {
    std::vector<Mat> blocks;
    for (int k = 0; k <= to.level(); ++k) blocks.push_back(ampliate_power(to, 0, x, from, 0, k));
    return block_diag(blocks);
}

// Range with an absolute singular-value cutoff; used where a subspace may
// legitimately be {0} and a relative cutoff would promote rounding noise.
Mat range_abs(const Mat& a, double eps) {
    if (a.size() == 0) return Mat(a.rows(), 0);
    Eigen::BDCSVD<Mat> svd(a, Eigen::ComputeThinU);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > eps) ++r;
    return svd.matrixU().leftCols(r);
}

Mat unit_image(const Correspondence& e, const Mat& left_or_right, int p) {
    (void)e;
    return left_or_right.col(p);
}

Eigen::VectorXd singular_values(const Mat& a) { return Eigen::JacobiSVD<Mat>(a).singularValues(); }

}  // namespace

ModelSpaces model_spaces(const CharacteristicData& cd, double eps_null) {
    ModelSpaces s{cd, Mat(), Mat(), Mat(), Mat(), 0, 0.0};
    const int n1 = cd.tower1.dim(), n2 = cd.tower2.dim();
    const PsdRoot root = psd_root_range(identity(n1) - cd.Theta.adjoint() * cd.Theta, eps_null, 1e-9);
    s.Delta = root.root;
    s.range = root.range;
    const int r = static_cast<int>(s.range.cols());
    s.fock_dim = n2;
    s.graph = Mat::Zero(n2 + r, n1);
    s.graph.topRows(n2) = cd.Theta;
    if (r > 0) s.graph.bottomRows(r) = s.range.adjoint() * s.Delta;
    s.H = null_basis(s.graph.adjoint(), 1e-10);
    if (n1 == 0) s.H = identity(n2 + r);
    s.graph_isometry = n1 == 0 ? 0.0 : residual(s.graph.adjoint() * s.graph, identity(n1));
    return s;
}

Mat ModelRep::V(const Vec& xi) const {
    const int n2 = spaces.fock_dim, r = static_cast<int>(spaces.range.cols());
    Mat v = Mat::Zero(n2 + r, n2 + r);
    v.topLeftCorner(n2, n2) = spaces.data.tower2.creation_operator(xi);
    for (int p = 0; p < static_cast<int>(S.size()); ++p)
        if (xi(p) != cplx(0.0)) v.bottomRightCorner(r, r) += xi(p) * S[p];
    return v;
}

ModelRep model_rep(const ModelSpaces& spaces, double tol) {
    const CharacteristicData& cd = spaces.data;
    const Correspondence& e = cd.E;
    const int n2 = spaces.fock_dim, r = static_cast<int>(spaces.range.cols()), k = spaces.k_dim();
    const Mat rd = r > 0 ? Mat(spaces.range.adjoint() * spaces.Delta) : Mat(0, cd.tower1.dim());
    const Mat rd_pinv = r > 0 ? pinv(rd, 1e-10) : Mat(cd.tower1.dim(), 0);

    std::vector<Mat> images;
    for (int u = 0; u < e.algebra.dim(); ++u) {
        const Element a = matrix_unit(e.algebra, u);
        Mat img = Mat::Zero(k, k);
        img.topLeftCorner(n2, n2) = cd.tower2.phi_infty(a);
        if (r > 0) img.bottomRightCorner(r, r) = spaces.range.adjoint() * cd.tower1.phi_infty(a) * spaces.range;
        images.push_back(img);
    }
    Representation rho = identify_rep(e.algebra, images, k);
    Representation sigma = restrict_rep(rho, spaces.H);

    std::vector<Mat> s;
    std::vector<Mat> t1;
    for (int p = 0; p < e.dim; ++p) {
        t1.push_back(cd.tower1.creation_operator(Vec::Unit(e.dim, p)));
        s.push_back(r > 0 ? Mat(rd * t1[p] * rd_pinv) : Mat(0, 0));
    }
    ModelRep m{spaces, rho, sigma, s, CovariantRep{}, 0.0, 0.0, 0.0, 0.0};

    const int h = static_cast<int>(spaces.H.cols());
    const LocalizedSpace loc = localize(e, sigma);
    Mat pre(h, e.dim * h);
    for (int p = 0; p < e.dim; ++p) pre.middleCols(p * h, h) = spaces.H.adjoint() * m.V(Vec::Unit(e.dim, p)) * spaces.H;
    m.rep = make_covrep(e, sigma, pre * loc.lift, tol);

    // Delta carries truncation artifacts in the top columns, so the graph part of
    // the checks stops at the predicate frontier.
    const int lower = cd.tower1.offset(predicate_frontier(cd) + 1);
    const Mat frontier = hstack({spaces.H, spaces.graph.leftCols(lower)}, k);
    for (int p = 0; p < e.dim; ++p) {
        const Mat vp = m.V(Vec::Unit(e.dim, p));
        if (r > 0) m.s_consistency = std::max(m.s_consistency, opnorm((s[p] * rd - rd * t1[p]).leftCols(lower)));
        m.graph_invariance = std::max(m.graph_invariance, opnorm((vp * spaces.graph - spaces.graph * t1[p]).leftCols(lower)));
        for (int q = 0; q < e.dim; ++q) {
            const Mat vq = m.V(Vec::Unit(e.dim, q));
            const Element ip = e.inner_product(Vec::Unit(e.dim, p), Vec::Unit(e.dim, q));
            m.isometry = std::max(m.isometry, opnorm(frontier.adjoint() * (vp.adjoint() * vq - rep_matrix(rho, ip)) * frontier));
        }
        for (int u = 0; u < e.algebra.dim(); ++u) {
            const Mat ru = rep_unit(rho, u);
            m.covariance = std::max(m.covariance, opnorm(ru * vp - m.V(unit_image(e, e.left[u], p))));
            m.covariance = std::max(m.covariance, opnorm(vp * ru - m.V(unit_image(e, e.right[u], p))));
        }
    }
    return m;
}

CanonicalEquivalence canonical_equivalence(const IsometricDilation& dil, double tol) {
    const CovariantRep& rep = dil.rep();
    const int n = dil.level();
    const ClassificationReport cls = classify(rep, n, tol);
    if (cls.is_cnc == Verdict::Undecided)
        throw Error(ErrorKind::Undecided, "c.n.c. is undecided at level " + std::to_string(n));
    if (cls.is_cnc == Verdict::False) throw Error(ErrorKind::Precondition, "representation is not c.n.c.");

    CharacteristicData cd = characteristic_operator(dil, tol);
    const ProjectionChain chain = projection_chain(dil, tol);
    const K0Data k0 = k0_and_u(dil, chain);
    const WanderingMap wm = wandering_map(dil, k0.K0, tol);
    ModelSpaces spaces = model_spaces(cd);
    ModelRep model = model_rep(spaces, 1e-8);

    const int kd = dil.k_dim();
    const Mat phi1 = wm.W * gradewise(wm.tower, k0.u.adjoint(), cd.tower2);
    const int r = static_cast<int>(spaces.range.cols());
    Mat phi2(kd, r);
    if (r > 0) {
        const Mat rd = spaces.range.adjoint() * spaces.Delta;
        phi2 = (identity(kd) - wm.W * wm.W.adjoint()) * dil.embed_gd() * pinv(rd, 1e-10);
    }
    CanonicalEquivalence c{cd, model, hstack({phi1, phi2}, kd), Mat(), 0, 0, 0, 0, 0, 0};
    const Mat& phi = c.Phi;
    const int k = static_cast<int>(phi.cols());
    c.unitarity = std::max(residual(phi.adjoint() * phi, identity(k)), residual(phi * phi.adjoint(), identity(kd)));
    const Mat jh = dil.embed_h();
    c.PhiH = jh.adjoint() * phi * spaces.H;
    c.subspace = subspace_distance(phi * spaces.H, jh);

    const Correspondence& e = rep.E;
    const int lower = cd.tower1.offset(predicate_frontier(cd) + 1);
    const Mat frontier = hstack({spaces.H, spaces.graph.leftCols(lower)}, k);
    for (int p = 0; p < e.dim; ++p) {
        const Vec xi = Vec::Unit(e.dim, p);
        c.intertwining_v = std::max(c.intertwining_v, opnorm((phi * model.V(xi) - dil.V(xi) * phi) * frontier));
        const Mat tm = spaces.H.adjoint() * model.V(xi) * spaces.H;
        c.model_operator = std::max(c.model_operator, residual(c.PhiH * tm * c.PhiH.adjoint(), rep.T(xi)));
    }
    for (int u = 0; u < e.algebra.dim(); ++u)
        c.intertwining_rho =
            std::max(c.intertwining_rho, opnorm(phi * rep_unit(model.rho, u) - rep_unit(dil.rho(), u) * phi));
    const Eigen::VectorXd a = singular_values(rep.Ttilde), b = singular_values(model.rep.Ttilde);
    c.singular_values = a.size() == b.size() ? (a - b).cwiseAbs().maxCoeff() : 1.0;
    return c;
}

IsomorphismReport verify_isomorphism(const CharacteristicData& theta, const CharacteristicData& theta_prime,
                                     const Mat& w1, const Mat& w2, double tol) {
    if (theta.tau1.dim() != theta_prime.tau1.dim() || theta.tau2.dim() != theta_prime.tau2.dim())
        throw Error(ErrorKind::Precondition, "coefficient spaces have different dimensions");
    if (w1.rows() != theta_prime.tau1.dim() || w1.cols() != theta.tau1.dim() || w2.rows() != theta_prime.tau2.dim() ||
        w2.cols() != theta.tau2.dim())
        throw Error(ErrorKind::Structural, "witness shapes do not match the coefficient spaces");
    if (theta.tower1.level() != theta_prime.tower1.level())
        throw Error(ErrorKind::Precondition, "characteristic data truncated at different levels");
    IsomorphismReport r;
    r.w_unitarity = std::max({residual(w1.adjoint() * w1, identity(static_cast<int>(w1.cols()))),
                              residual(w1 * w1.adjoint(), identity(static_cast<int>(w1.rows()))),
                              residual(w2.adjoint() * w2, identity(static_cast<int>(w2.cols()))),
                              residual(w2 * w2.adjoint(), identity(static_cast<int>(w2.rows())))});
    r.w_intertwining = std::max(intertwining_residual(theta_prime.tau1, w1, theta.tau1),
                                intertwining_residual(theta_prime.tau2, w2, theta.tau2));
    if (r.w_unitarity > tol || r.w_intertwining > tol)
        throw Error(ErrorKind::Precondition, "witnesses are not intertwining unitaries (residuals " +
                                                 std::to_string(r.w_unitarity) + ", " +
                                                 std::to_string(r.w_intertwining) + ")");
    const Mat predicted = gradewise(theta_prime.tower2, w2, theta.tower2) * theta.Theta *
                          gradewise(theta.tower1, w1.adjoint(), theta_prime.tower1);
    const int lower = theta_prime.tower1.offset(theta_prime.tower1.level());
    r.residual = opnorm((predicted - theta_prime.Theta).leftCols(lower));
    r.isomorphic = r.residual <= tol;
    return r;
}

Witnesses construct_witnesses(const CharacteristicData& cd, double tol) {
    ModelRep model = model_rep(model_spaces(cd), tol);
    const ModelSpaces& sp = model.spaces;
    const int n = cd.tower1.level();
    const IsometricDilation dil(model.rep, n);
    CharacteristicData mcd = characteristic_operator(dil, 1e-10);
    const ProjectionChain chain = projection_chain(dil, 1e-10);
    const K0Data k0 = k0_and_u(dil, chain);

    const Correspondence& e = cd.E;
    const Mat jh = dil.embed_h();
    std::vector<Mat> xs{sp.H}, ys{jh};
    for (int p = 0; p < e.dim; ++p) {
        const Vec xi = Vec::Unit(e.dim, p);
        xs.push_back(model.V(xi) * sp.H);
        ys.push_back(dil.V(xi) * jh);
    }
    const Mat x = hstack(xs, sp.k_dim()), y = hstack(ys, dil.k_dim());
    const Mat w = y * pinv(x, 1e-10);

    Witnesses out{model, mcd, Mat(), Mat(), residual(x.adjoint() * x, y.adjoint() * y)};
    const int d1 = cd.tower1.grade_dim(0), d2 = cd.tower2.grade_dim(0);
    out.W1 = dil.embed_g(0).adjoint() * w * sp.graph.leftCols(d1);
    out.W2 = k0.u * k0.K0.adjoint() * w * identity(sp.k_dim()).leftCols(d2);
    return out;
}

MinimalityReport check_minimality(const ModelRep& model, double tol) {
    const ModelSpaces& sp = model.spaces;
    const CharacteristicData& cd = sp.data;
    if (is_pure(cd).verdict != Verdict::True) throw Error(ErrorKind::Precondition, "characteristic data is not pure");
    if (is_predictable(cd).verdict != Verdict::True)
        throw Error(ErrorKind::Precondition, "characteristic data is not predictable");
    const Correspondence& e = cd.E;
    const int k = sp.k_dim(), n = cd.tower1.level();
    std::vector<Mat> spans{sp.H};
    Mat level = sp.H;
    std::vector<Mat> k1;
    for (int w = 1; w <= n && level.cols() > 0; ++w) {
        std::vector<Mat> next;
        for (int p = 0; p < e.dim; ++p) next.push_back(model.V(Vec::Unit(e.dim, p)) * level);
        if (w == 1) k1 = next;
        level = range_abs(hstack(next, k), 1e-10);
        spans.push_back(level);
    }
    const Mat span = range_abs(hstack(spans, k), 1e-10);
    MinimalityReport r;
    r.frontier = predicate_frontier(cd);
    const Mat fr = hstack({sp.H, sp.graph.leftCols(cd.tower1.offset(r.frontier + 1))}, k);
    r.missing = opnorm((identity(k) - projector(span)) * fr);
    r.verdict = r.missing < tol ? Verdict::True : Verdict::False;

    const int d1 = cd.tower1.grade_dim(0);
    const Mat m0 = range_abs(sp.graph.leftCols(d1), 1e-10);
    const Mat k1p = k1.empty() ? Mat(k, 0) : range_abs((identity(k) - sp.P()) * hstack(k1, k), 1e-10);
    r.m0_distance = subspace_distance(m0, k1p);
    return r;
}

double invariance_residual(const ModelRep& model, const Mat& msub) {
    const ModelSpaces& sp = model.spaces;
    const int k = sp.k_dim();
    if (msub.cols() == 0) return 0.0;
    const Mat p = sp.P(), pm = projector(msub), q = identity(k) - pm;
    double worst = opnorm((identity(k) - p) * msub);
    const Correspondence& e = sp.data.E;
    for (int i = 0; i < e.dim; ++i) worst = std::max(worst, opnorm(q * p * model.V(Vec::Unit(e.dim, i)) * msub));
    for (int u = 0; u < e.algebra.dim(); ++u) worst = std::max(worst, opnorm(q * rep_unit(model.rho, u) * msub));
    return worst;
}

Factorization factor_from_subspace(const ModelRep& model, const Mat& msub, double tol) {
    const ModelSpaces& sp = model.spaces;
    const CharacteristicData& cd = sp.data;
    if (is_inner(cd).verdict != Verdict::True) throw Error(ErrorKind::Precondition, "characteristic data is not inner");
    const double inv = invariance_residual(model, msub);
    if (inv > tol) throw Error(ErrorKind::Precondition, "subspace is not invariant (residual " + std::to_string(inv) + ")");
    const int n2 = sp.fock_dim, n = cd.tower1.level();
    const Correspondence& e = cd.E;
    const Mat m2 = msub.topRows(n2);
    if (msub.rows() > n2 && msub.bottomRows(msub.rows() - n2).size() > 0 && opnorm(msub.bottomRows(msub.rows() - n2)) > tol)
        throw Error(ErrorKind::Precondition, "subspace leaves the Fock part of K(Theta)");

    const Mat nsub = range_abs(hstack({m2, cd.Theta}, n2), 1e-10);
    std::vector<Mat> shifted;
    for (int p = 0; p < e.dim; ++p) shifted.push_back(cd.tower2.creation_operator(Vec::Unit(e.dim, p)) * nsub);
    const Mat sn = range_abs(hstack(shifted, n2), 1e-10);
    Factorization f;
    f.H0 = range_abs((identity(n2) - projector(sn)) * nsub, 1e-10);
    f.rho = restrict_rep(cd.tower2.induced(), f.H0);

    std::vector<Mat> c1;
    for (int k = 0; k <= n; ++k) c1.push_back(f.H0.middleRows(cd.tower2.offset(k), cd.tower2.grade_dim(k)));
    f.theta1 = characteristic_data_from_coefficients(e, f.rho, cd.tau2, c1, n);
    const Mat prod = f.theta1.Theta.adjoint() * cd.Theta;
    std::vector<Mat> c2;
    for (int k = 0; k <= n; ++k) c2.push_back(block(prod, f.theta1.tower1, k, cd.tower1, 0));
    f.theta2 = characteristic_data_from_coefficients(e, cd.tau1, f.rho, c2, n);

    const int fr = predicate_frontier(cd);
    const int cols = cd.tower1.offset(fr + 1);
    f.product_residual = opnorm((cd.Theta - f.theta1.Theta * f.theta2.Theta).leftCols(cols));
    f.inner1 = is_inner(f.theta1, tol);
    f.inner2 = is_inner(f.theta2, tol);

    const Mat hm = msub.cols() == 0 ? sp.H : range_abs((identity(sp.k_dim()) - projector(msub)) * sp.H, 1e-10);
    const Mat rng = range_abs(f.theta1.Theta, 1e-10);
    const Mat comp = range_abs(identity(n2) - projector(rng), 1e-10);
    f.decomposition = subspace_distance(comp, range_abs(hm.topRows(n2), 1e-10));
    return f;
}

SubspaceResult subspace_from_factorization(const ModelRep& model, const CharacteristicData& theta1,
                                           const CharacteristicData& theta2, double tol) {
    const ModelSpaces& sp = model.spaces;
    const CharacteristicData& cd = sp.data;
    if (theta1.tower2.dim() != cd.tower2.dim() || theta2.tower1.dim() != cd.tower1.dim())
        throw Error(ErrorKind::Structural, "factors do not compose to the characteristic data");
    const int cols = cd.tower1.offset(predicate_frontier(cd) + 1);
    const double res = opnorm((cd.Theta - theta1.Theta * theta2.Theta).leftCols(cols));
    if (res > tol) throw Error(ErrorKind::Precondition, "factorization residual " + std::to_string(res));
    Mat z = Mat::Zero(sp.k_dim(), theta1.Theta.cols());
    z.topRows(sp.fock_dim) = theta1.Theta;
    SubspaceResult out;
    out.M = range_abs(sp.P() * z, 1e-8);
    out.invariance = invariance_residual(model, out.M);
    return out;
}

double factor_equivalence(const Factorization& a, const Factorization& b) {
    if (a.H0.cols() != b.H0.cols() || a.H0.rows() != b.H0.rows()) return 1.0;
    const Mat v0 = polar_unitary(a.H0.adjoint() * b.H0);
    const Mat aligned = a.theta1.Theta * gradewise(a.theta1.tower1, v0, b.theta1.tower1);
    return residual(aligned, b.theta1.Theta);
}

LiftResult lift_commutant(const CovariantRep& rep, const Mat& x, int level, double tol) {
    const ClassificationReport cls = classify(rep, level, 1e-10);
    if (cls.is_C0 == Verdict::Undecided)
        throw Error(ErrorKind::Undecided, "C0 property is undecided at level " + std::to_string(level));
    if (cls.is_C0 == Verdict::False) throw Error(ErrorKind::Precondition, "representation is not C0");
    const int h = rep.h_dim();
    if (x.rows() != h || x.cols() != h) throw Error(ErrorKind::Structural, "X must act on H");
    const Correspondence& e = rep.E;
    double comm = 0.0;
    for (int u = 0; u < e.algebra.dim(); ++u) {
        const Mat s = rep_unit(rep.sigma, u);
        comm = std::max(comm, opnorm(x * s - s * x));
    }
    if (comm <= tol) comm = std::max(comm, opnorm(x * rep.Ttilde - rep.Ttilde * ampliate(rep.loc, x, rep.loc)));
    if (comm > tol) throw Error(ErrorKind::Precondition, "X does not commute with (T, sigma): " + std::to_string(comm));

    const IsometricDilation dil(rep, level);
    const ProjectionChain chain = projection_chain(dil, 1e-10);
    const K0Data k0 = k0_and_u(dil, chain);
    const WanderingMap wm = wandering_map(dil, k0.K0, 1e-10);
    const FockTower tower(e, dil.defect().tau2, level);

    LiftResult r;
    r.U0 = gradewise(tower, k0.u, wm.tower) * wm.W.adjoint() * dil.embed_h();
    r.u0_isometry = residual(r.U0.adjoint() * r.U0, identity(h));

    // Psi = sum theta_j B_j over Toeplitz operators with intertwining coefficients;
    // U0^* Psi = X U0^* is linear in theta and solved in the minimum-norm sense.
    std::vector<std::pair<int, Mat>> basis;
    for (int k = 0; k <= level; ++k)
        for (const Mat& b : intertwiner_basis(tower.rep(k), tower.rep(0))) basis.emplace_back(k, b);
    const int n = tower.dim();
    auto toeplitz = [&](int k, const Mat& c) {
        Mat t = Mat::Zero(n, n);
        for (int j = 0; j + k <= level; ++j)
            t.block(tower.offset(j + k), tower.offset(j), tower.grade_dim(j + k), tower.grade_dim(j)) =
                ampliate_power(tower, k, c, tower, 0, j);
        return t;
    };
    const Eigen::Index rows = static_cast<Eigen::Index>(h) * n;
    Mat a(rows, static_cast<Eigen::Index>(basis.size()));
    std::vector<Mat> ops;
    for (size_t j = 0; j < basis.size(); ++j) {
        ops.push_back(toeplitz(basis[j].first, basis[j].second));
        const Mat m = r.U0.adjoint() * ops.back();
        a.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Vec>(m.data(), rows);
    }
    const Mat rhs_m = x * r.U0.adjoint();
    const Vec rhs = Eigen::Map<const Vec>(rhs_m.data(), rows);
    const Vec theta = Eigen::CompleteOrthogonalDecomposition<Mat>(a).solve(rhs);

    r.Psi = Mat::Zero(n, n);
    r.coefficients.assign(level + 1, Mat());
    for (int k = 0; k <= level; ++k) r.coefficients[k] = Mat::Zero(tower.grade_dim(k), tower.grade_dim(0));
    for (size_t j = 0; j < basis.size(); ++j) {
        r.Psi += theta(static_cast<Eigen::Index>(j)) * ops[j];
        r.coefficients[basis[j].first] += theta(static_cast<Eigen::Index>(j)) * basis[j].second;
    }
    r.constraint = opnorm(r.Psi.adjoint() * r.U0 - r.U0 * x.adjoint());
    r.compression = opnorm(r.U0.adjoint() * r.Psi * r.U0 - x);
    r.norm_x = opnorm(x);
    if (r.constraint > tol * std::max(1.0, r.norm_x))
        throw Error(ErrorKind::Numerical, "no Toeplitz lifting up to level " + std::to_string(level) +
                                              " (residual " + std::to_string(r.constraint) + ")");
    const Representation& tau2 = dil.defect().tau2;
    const CharacteristicData cd = characteristic_data_from_coefficients(e, tau2, tau2, r.coefficients, level);
    r.symbol = to_function(cd, std::max(tol, 1e-8));
    r.norm_xi = opnorm(check_transform(r.symbol.fourier, r.symbol.symbol));
    return r;
}

}  // namespace opm
