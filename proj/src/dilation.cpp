#include "opmodel/dilation.hpp"

namespace opm {

IsometricDilation::IsometricDilation(const CovariantRep& rep, int level, double eps_null)
    : rep_(rep),
      def_(defects(rep, eps_null)),
      level_(level),
      tower_h_(rep.E, rep.sigma, 1),
      tower_d_(rep.E, def_.tau1, level + 1) {
    if (level < 1) throw Error(ErrorKind::Precondition, "dilation needs level >= 1");
    k_off_ = {0, rep.h_dim()};
    for (int k = 0; k <= level; ++k) k_off_.push_back(k_off_.back() + tower_d_.grade_dim(k));
    ek_off_ = {0, tower_h_.grade_dim(1)};
    for (int k = 1; k <= level + 1; ++k) ek_off_.push_back(ek_off_.back() + tower_d_.grade_dim(k));

    vtilde_ = Mat::Zero(k_dim(), ek_dim());
    vtilde_.block(0, 0, rep.h_dim(), ek_block_dim(0)) = rep.Ttilde;
    vtilde_.block(k_offset(1), 0, k_block_dim(1), ek_block_dim(0)) = def_.D.adjoint() * def_.Delta;
    for (int k = 1; k <= level; ++k)
        vtilde_.block(k_offset(1 + k), ek_offset(k), k_block_dim(1 + k), ek_block_dim(k)) =
            identity(k_block_dim(1 + k));

    std::vector<Representation> kr{rep.sigma}, er{tower_h_.rep(1)};
    for (int k = 0; k <= level; ++k) kr.push_back(tower_d_.rep(k));
    for (int k = 1; k <= level + 1; ++k) er.push_back(tower_d_.rep(k));
    rho_ = direct_sum(kr).rep;
    rho_e_ = direct_sum(er).rep;
}

const LocalizedSpace& IsometricDilation::ek_block(int i) const {
    return i == 0 ? tower_h_.localized(1) : tower_d_.localized(i);
}

Mat IsometricDilation::embed_h() const {
    Mat e = Mat::Zero(k_dim(), rep_.h_dim());
    e.topRows(rep_.h_dim()) = identity(rep_.h_dim());
    return e;
}

Mat IsometricDilation::embed_g(int k) const {
    Mat e = Mat::Zero(k_dim(), k_block_dim(1 + k));
    e.middleRows(k_offset(1 + k), k_block_dim(1 + k)) = identity(k_block_dim(1 + k));
    return e;
}

Mat IsometricDilation::embed_gd() const {
    const int h = rep_.h_dim();
    Mat e = Mat::Zero(k_dim(), k_dim() - h);
    e.bottomRows(k_dim() - h) = identity(k_dim() - h);
    return e;
}

Mat IsometricDilation::L(const Vec& xi) const {
    Mat l = Mat::Zero(ek_dim(), k_dim());
    for (int i = 0; i < num_blocks(); ++i)
        l.block(ek_offset(i), k_offset(i), ek_block_dim(i), k_block_dim(i)) = ek_block(i).create(xi);
    return l;
}

Mat IsometricDilation::vtilde_times(const Mat& y) const {
    if (y.rows() != ek_dim()) throw Error(ErrorKind::Structural, "vtilde_times: y must map into E (x) K");
    // rows H + G_0 come from E (x) H through T~ and Delta; G_k is copied for k <= N
    const int top = k_offset(2), e0 = ek_block_dim(0);
    Mat out(k_dim(), y.cols());
    out.topRows(top) = vtilde_.topLeftCorner(top, e0) * y.topRows(e0);
    out.bottomRows(k_dim() - top) = y.middleRows(ek_offset(1), k_dim() - top);
    return out;
}

Mat IsometricDilation::times_vtilde_adjoint(const Mat& y) const {
    // y : E (x) K -> ., result : K -> .; the columns of G_{N+1} are dropped
    const int top = k_offset(2), e0 = ek_block_dim(0);
    if (y.cols() != ek_dim()) throw Error(ErrorKind::Structural, "times_vtilde_adjoint: y must act on E (x) K");
    Mat out(y.rows(), k_dim());
    out.leftCols(top) = y.leftCols(e0) * vtilde_.topLeftCorner(top, e0).adjoint();
    out.rightCols(k_dim() - top) = y.middleCols(ek_offset(1), k_dim() - top);
    return out;
}

Mat IsometricDilation::ampliate(const Mat& x) const {
    Mat y = Mat::Zero(ek_dim(), ek_dim());
    for (int i = 0; i < num_blocks(); ++i)
        for (int j = 0; j < num_blocks(); ++j) {
            const auto xb = x.block(k_offset(i), k_offset(j), k_block_dim(i), k_block_dim(j));
            if (xb.size() == 0 || xb.cwiseAbs().maxCoeff() == 0.0) continue;
            y.block(ek_offset(i), ek_offset(j), ek_block_dim(i), ek_block_dim(j)) =
                opm::ampliate(ek_block(i), xb, ek_block(j));
        }
    return y;
}

Mat IsometricDilation::ampliate_into(const Mat& x, const LocalizedSpace& from) const {
    Mat y = Mat::Zero(ek_dim(), from.dim);
    for (int i = 0; i < num_blocks(); ++i) {
        const Mat xb = x.middleRows(k_offset(i), k_block_dim(i));
        if (xb.size() == 0) continue;
        y.middleRows(ek_offset(i), ek_block_dim(i)) = opm::ampliate(ek_block(i), xb, from);
    }
    return y;
}

Mat IsometricDilation::ampliate_from(const LocalizedSpace& to, const Mat& x) const {
    Mat y = Mat::Zero(to.dim, ek_dim());
    for (int j = 0; j < num_blocks(); ++j) {
        const Mat xb = x.middleCols(k_offset(j), k_block_dim(j));
        if (xb.size() == 0) continue;
        y.middleCols(ek_offset(j), ek_block_dim(j)) = opm::ampliate(to, xb, ek_block(j));
    }
    return y;
}

double IsometricDilation::isometry_residual() const {
    const int n = ek_offset(level_ + 1);
    const Mat v = vtilde_.leftCols(n);
    return opnorm(v.adjoint() * v - identity(n));
}

double IsometricDilation::dilation_residual() const {
    double r = 0.0;
    const Mat jh = embed_h();
    for (int p = 0; p < rep_.E.dim; ++p) {
        const Vec e = Vec::Unit(rep_.E.dim, p);
        r = std::max(r, opnorm(jh.adjoint() * V(e) * jh - rep_.T(e)));
    }
    return r;
}

double IsometricDilation::covariance_residual() const {
    // V(e_p a) = V(e_p) rho(a) and V(phi(a) e_p) = rho(a) V(e_p)
    const Correspondence& e = rep_.E;
    double r = 0.0;
    for (int p = 0; p < e.dim; ++p) {
        const Vec ep = Vec::Unit(e.dim, p);
        const Mat vp = V(ep);
        for (int u = 0; u < e.algebra.dim(); ++u) {
            const Mat ru = rep_unit(rho_, u);
            r = std::max(r, opnorm(V(e.right[u] * ep) - vp * ru));
            r = std::max(r, opnorm(V(e.left[u] * ep) - ru * vp));
        }
    }
    return r;
}

TruncationLedger IsometricDilation::ledger() const { return {level_, level_ - 1, 0.0}; }

const char* to_string(PinfVerdict v) {
    switch (v) {
        case PinfVerdict::ExactZero: return "exact-zero";
        case PinfVerdict::Stabilized: return "stabilized";
        default: return "undecided";
    }
}

ProjectionChain projection_chain(const IsometricDilation& dil, double tol) {
    ProjectionChain c;
    const int n = dil.k_dim(), level = dil.level();
    const Mat& v = dil.Vtilde();
    c.P.push_back(v * v.adjoint());
    for (int k = 1; k <= level; ++k) c.P.push_back(dil.L_map(c.P.back()));
    c.Q.push_back(identity(n) - c.P.front());
    for (int k = 1; k <= level + 1; ++k) c.Q.push_back(dil.L_map(c.Q.back()));
    Mat sum = Mat::Zero(n, n);
    for (const auto& q : c.Q) sum += q;
    c.Pinf = identity(n) - sum;
    c.orthogonality = opnorm(sum * sum - sum);
    c.pinf_tail = c.P.size() >= 2 ? opnorm(c.P[level] - c.P[level - 1]) : 1.0;

    const CovariantRep& rep = dil.rep();
    const FockTower tw(rep.E, rep.sigma, level);
    const std::vector<Mat> pw = generalized_powers(rep, tw, level);
    if (opnorm(rep.Ttilde) < 1.0 - tol || opnorm(pw[level]) < tol) {
        c.verdict = PinfVerdict::ExactZero;
    } else if (level >= 2 && c.pinf_tail < tol && opnorm(c.P[level - 1] - c.P[level - 2]) < tol) {
        c.verdict = PinfVerdict::Stabilized;
    }
    return c;
}

WanderingShiftReport check_wandering_shift(const IsometricDilation& dil, const ProjectionChain& chain) {
    WanderingShiftReport r;
    const int level = dil.level(), n = dil.k_dim();
    Mat qinf = Mat::Zero(n, n);
    for (const auto& q : chain.Q) qinf += q;
    // grades <= N-1 of K: everything but G_N
    Mat low = Mat::Zero(n, n);
    low.topLeftCorner(dil.k_offset(level + 1), dil.k_offset(level + 1)) = identity(dil.k_offset(level + 1));
    for (int p = 0; p < dil.rep().E.dim; ++p) {
        const Mat vp = dil.V(Vec::Unit(dil.rep().E.dim, p));
        for (int m = 0; m + 1 <= level; ++m)
            r.shift = std::max(r.shift, opnorm(vp * chain.Q[m] - chain.Q[m + 1] * vp));
        r.qinf = std::max(r.qinf, opnorm(low * (vp * qinf - qinf * vp) * low));
    }
    return r;
}

WanderingMap wandering_map(const IsometricDilation& dil, const Mat& msub, double tol) {
    const int n = dil.k_dim(), level = dil.level();
    const Correspondence& e = dil.rep().E;
    const Mat pm = projector(msub);
    double inv = 0.0;
    for (int u = 0; u < e.algebra.dim(); ++u)
        inv = std::max(inv, opnorm((identity(n) - pm) * rep_unit(dil.rho(), u) * msub));
    if (inv > 1e-8) throw Error(ErrorKind::Precondition, "subspace is not invariant under rho(M)");

    WanderingMap w{Mat(), {}, FockTower(e, restrict_rep(dil.rho(), msub), level), false, 0.0, 0.0};
    std::vector<Mat> vp;
    for (int p = 0; p < e.dim; ++p) vp.push_back(dil.V(Vec::Unit(e.dim, p)));
    w.grades.push_back(msub);
    for (int k = 1; k <= level; ++k) {
        std::vector<Mat> cols;
        for (int p = 0; p < e.dim; ++p) cols.push_back(vp[p] * w.grades.back());
        w.grades.push_back(hstack(cols, n) * w.tower.localized(k).lift);
    }
    w.W = hstack(w.grades, n);
    w.isometry_residual = opnorm(w.W.adjoint() * w.W - identity(static_cast<int>(w.W.cols())));

    std::vector<Mat> lp{pm};
    for (int k = 1; k <= level; ++k) lp.push_back(dil.L_map(lp.back()));
    Mat sum = Mat::Zero(n, n);
    for (const auto& p : lp) sum += p;
    w.overlap = opnorm(sum * sum - sum);
    w.wandering = w.overlap < tol;
    return w;
}

K0Data k0_and_u(const IsometricDilation& dil, const ProjectionChain& chain) {
    K0Data k;
    const DefectData& d = dil.defect();
    const Mat x = chain.Q[0] * dil.embed_h();
    k.K0 = range_basis(x, 1e-10);
    k.rho0 = restrict_rep(dil.rho(), k.K0);
    const Mat ds = d.Dstar.adjoint() * d.DeltaStar;
    k.u = ds * pinv(x, 1e-10) * k.K0;
    const int m = static_cast<int>(k.K0.cols());
    k.isometry_residual = opnorm(k.u.adjoint() * k.u - identity(m));
    if (k.u.rows() != m) k.isometry_residual = std::max(k.isometry_residual, 1.0);
    k.intertwining_residual = intertwining_residual(d.tau2, k.u, k.rho0);
    k.generator_residual = opnorm(k.u * k.K0.adjoint() * x - ds);
    return k;
}

DilationSplit decompose(const IsometricDilation& dil, const ProjectionChain& chain) {
    if (chain.verdict == PinfVerdict::Undecided)
        throw Error(ErrorKind::Undecided, "P_inf is undecided at level " + std::to_string(dil.level()));
    DilationSplit s;
    const int n = dil.k_dim();
    Mat pinf = chain.verdict == PinfVerdict::ExactZero ? Mat(Mat::Zero(n, n)) : chain.Pinf;
    s.coisometric = eigenspace(pinf, 1.0, 1e-6);
    s.induced = eigenspace(identity(n) - pinf, 1.0, 1e-6);
    if (s.coisometric.cols() > 0) {
        const Representation r = restrict_rep(dil.rho(), s.coisometric);
        const LocalizedSpace loc = localize(dil.rep().E, r);
        const Mat v = s.coisometric.adjoint() * dil.Vtilde() * dil.ampliate_into(s.coisometric, loc);
        const int m = static_cast<int>(v.rows());
        s.unitarity_residual = std::max(opnorm(v.adjoint() * v - identity(static_cast<int>(v.cols()))),
                                        opnorm(v * v.adjoint() - identity(m)));
    }
    return s;
}

}  // namespace opm
