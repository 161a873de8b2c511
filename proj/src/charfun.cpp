#include "opmodel/charfun.hpp"

#include <algorithm>
#include <cmath>

namespace opm {

namespace {

Mat gradewise(const FockTower& to, const Mat& x, const FockTower& from) {
    std::vector<Mat> blocks;
    for (int k = 0; k <= to.level(); ++k) blocks.push_back(ampliate_power(to, 0, x, from, 0, k));
    return block_diag(blocks);
}

Vec unit_vector(int n, int p) { return Vec::Unit(n, p); }

}  // namespace

const char* to_string(EvalMethod m) {
    switch (m) {
        case EvalMethod::Series: return "series";
        case EvalMethod::Resolvent: return "resolvent";
        default: return "operator-series";
    }
}

CommutationReport intertwining_residual(const CharacteristicData& cd) {
    CommutationReport r;
    const int lower = cd.tower1.offset(cd.tower1.level());
    for (int p = 0; p < cd.E.dim; ++p) {
        const Vec xi = unit_vector(cd.E.dim, p);
        const Mat t1 = cd.tower1.creation_operator(xi), t2 = cd.tower2.creation_operator(xi);
        r.creation = std::max(r.creation, opnorm((cd.Theta * t1 - t2 * cd.Theta).leftCols(lower)));
    }
    for (int u = 0; u < cd.E.algebra.dim(); ++u) {
        const Element a = matrix_unit(cd.E.algebra, u);
        r.diagonal =
            std::max(r.diagonal, opnorm(cd.Theta * cd.tower1.phi_infty(a) - cd.tower2.phi_infty(a) * cd.Theta));
    }
    return r;
}

double contraction_excess(const CharacteristicData& cd) { return std::max(0.0, opnorm(cd.Theta) - 1.0); }

double grade0_residual(const CharacteristicData& cd) {
    if (!cd.from_rep) return 0.0;
    return residual(taylor_coefficient(cd, 0), cd.grade0_expected);
}

CharacteristicData characteristic_operator(const IsometricDilation& dil, double tol) {
    const ProjectionChain chain = projection_chain(dil, tol);
    if (chain.verdict == PinfVerdict::Undecided)
        throw Error(ErrorKind::Undecided, "P_inf is undecided at level " + std::to_string(dil.level()));
    const K0Data k0 = k0_and_u(dil, chain);
    const WanderingMap wm = wandering_map(dil, k0.K0, tol);
    const int n = dil.level();
    const CovariantRep& rep = dil.rep();
    const DefectData& def = dil.defect();

    CharacteristicData cd{rep.E, def.tau1, def.tau2, FockTower(rep.E, def.tau1, n), FockTower(rep.E, def.tau2, n),
                          Mat(), {}, true, Mat()};
    const Mat wd = dil.embed_gd();
    Mat y = wm.W.adjoint() * wd;
    if (chain.verdict != PinfVerdict::ExactZero) y -= wm.W.adjoint() * (chain.Pinf * wd);
    cd.Theta = gradewise(cd.tower2, k0.u, wm.tower) * y;
    cd.grade0_expected = -def.Dstar.adjoint() * rep.Ttilde * def.D;

    const double t = opnorm(rep.Ttilde);
    cd.ledger.level = n;
    cd.ledger.frontier = n - 1;
    if (t < 1.0 - tol)
        cd.ledger.tail_bound = geometric_tail(t, n);
    else
        cd.ledger.tail_bound = chain.verdict == PinfVerdict::ExactZero ? 0.0 : -1.0;
    return cd;
}

CharacteristicData characteristic_data_from_coefficients(const Correspondence& e, const Representation& tau1,
                                                         const Representation& tau2, const std::vector<Mat>& coeffs,
                                                         int level) {
    CharacteristicData cd{e, tau1, tau2, FockTower(e, tau1, level), FockTower(e, tau2, level), Mat(), {}, false, Mat()};
    const FockTower &t1 = cd.tower1, &t2 = cd.tower2;
    cd.Theta = Mat::Zero(t2.dim(), t1.dim());
    for (int k = 0; k <= level && k < static_cast<int>(coeffs.size()); ++k) {
        if (coeffs[k].rows() != t2.grade_dim(k) || coeffs[k].cols() != t1.grade_dim(0))
            throw Error(ErrorKind::Structural, "coefficient " + std::to_string(k) + " has the wrong shape");
        const double res = intertwining_residual(t2.rep(k), coeffs[k], t1.rep(0));
        if (res > 1e-10)
            throw Error(ErrorKind::Validation, "coefficient " + std::to_string(k) + " is not an intertwiner");
        for (int j = 0; j + k <= level; ++j)
            cd.Theta.block(t2.offset(j + k), t1.offset(j), t2.grade_dim(j + k), t1.grade_dim(j)) =
                ampliate_power(t2, k, coeffs[k], t1, 0, j);
    }
    cd.ledger = {level, level - 1, coeffs.size() <= static_cast<size_t>(level) + 1 ? 0.0 : -1.0};
    return cd;
}

Mat taylor_coefficient(const CharacteristicData& cd, int k) { return block(cd.Theta, cd.tower2, k, cd.tower1, 0); }

CharFunction to_function(const CharacteristicData& cd, double tol) {
    Supplement supp = supplement(cd.tau1, cd.tau2);
    const int n = cd.tower1.level();
    FourierTransform f(dual(cd.E, supp.tau), n);
    const Mat j1 = gradewise(f.tower(), supp.iota1, cd.tower1);
    const Mat j2 = gradewise(f.tower(), supp.iota2, cd.tower2);
    Symbol s = hat_transform(f, j2 * cd.Theta * j1.adjoint(), tol);
    double corner = 0.0;
    for (int k = 0; k <= n; ++k) {
        const Mat p2 = ampliate_power(f.tower(), 0, supp.q2, f.tower(), 0, k);
        corner = std::max(corner, residual(p2 * s.coefficients[k] * supp.q1, s.coefficients[k]));
    }
    return CharFunction{std::move(supp), std::move(f), std::move(s), corner};
}

double point_norm(const LocalizedSpace& loc, const Vec& xi) { return opnorm(loc.create(xi)); }

PointEvaluation evaluate_series(const CharFunction& f, const Vec& xi) {
    const DualCorrespondence& d = f.fourier.dual();
    if (xi.size() != d.base.dim) throw Error(ErrorKind::Structural, "evaluation point has the wrong length");
    PointEvaluation pe;
    pe.xi = xi;
    pe.method = EvalMethod::Series;
    pe.r = point_norm(d.loc, xi);
    if (pe.r >= 1.0) throw Error(ErrorKind::Domain, "point outside the open unit ball: ||L_xi|| = " + std::to_string(pe.r));
    const Mat point = hat(d, f.fourier.dual_tower().localized(1), xi).adjoint();
    const Mat v = evaluate_symbol(f.fourier, f.symbol, point);
    pe.value = f.supp.iota2.adjoint() * v * f.supp.iota1;
    pe.tail_bound = geometric_tail(pe.r, f.fourier.level());
    return pe;
}

PointEvaluation evaluate_operator_series(const CharacteristicData& cd, const Vec& xi) {
    if (xi.size() != cd.E.dim) throw Error(ErrorKind::Structural, "evaluation point has the wrong length");
    PointEvaluation pe;
    pe.xi = xi;
    pe.method = EvalMethod::OperatorSeries;
    const int n = cd.tower2.level();
    pe.r = n >= 1 ? point_norm(cd.tower2.localized(1), xi) : 0.0;
    if (pe.r >= 1.0) throw Error(ErrorKind::Domain, "point outside the open unit ball: ||L_xi|| = " + std::to_string(pe.r));
    pe.value = Mat::Zero(cd.tower2.grade_dim(0), cd.tower1.grade_dim(0));
    for (int k = 0; k <= n; ++k) pe.value += cd.tower2.create_power(k, xi).adjoint() * taylor_coefficient(cd, k);
    pe.tail_bound = geometric_tail(pe.r, n);
    return pe;
}

PointEvaluation evaluate_resolvent(const CovariantRep& rep, const DefectData& def, const Vec& xi) {
    if (xi.size() != rep.E.dim) throw Error(ErrorKind::Structural, "evaluation point has the wrong length");
    PointEvaluation pe;
    pe.xi = xi;
    pe.method = EvalMethod::Resolvent;
    const Mat lstar = rep.loc.create(xi).adjoint();
    if (opnorm(lstar) >= 1.0) throw Error(ErrorKind::Domain, "point outside the open unit ball");
    const Mat a = lstar * rep.Ttilde.adjoint();
    pe.r = opnorm(a);
    const int h = rep.h_dim();
    Eigen::FullPivLU<Mat> lu(identity(h) - a);
    if (!lu.isInvertible() || lu.rcond() < 1e-14) throw Error(ErrorKind::Numerical, "resolvent is singular");
    const Mat inner = lu.solve(lstar * def.Delta * def.D);
    pe.value = def.Dstar.adjoint() * (-rep.Ttilde * def.D + def.DeltaStar * inner);
    pe.tail_bound = 0.0;
    return pe;
}

int predicate_frontier(const CharacteristicData& cd) { return cd.tower1.level() / 3; }

PredicateReport is_inner(const CharacteristicData& cd, double tol) {
    PredicateReport r;
    const int n = cd.tower1.level();
    r.frontier = predicate_frontier(cd);
    const int cols = cd.tower1.offset(r.frontier + 1);
    const Mat a = cd.Theta.leftCols(cols);
    r.residual = opnorm(a.adjoint() * a - identity(cols));
    // Rows in the last `frontier` grades stand in for the rows cut off above N.
    const int first = cd.tower2.offset(std::max(0, n - r.frontier));
    const double t = opnorm(a.bottomRows(cd.tower2.dim() - first));
    r.tail_estimate = t * t;
    if (r.residual <= tol) {
        r.verdict = Verdict::True;
        r.note = "isometric on grades <= " + std::to_string(r.frontier) + " at level " + std::to_string(n);
    } else if (r.residual > tol + 2.0 * r.tail_estimate) {
        r.verdict = Verdict::False;
        r.note = "defect exceeds the truncation tail";
    } else {
        r.note = "defect within the truncation tail at level " + std::to_string(n);
    }
    return r;
}

PredicateReport is_pure(const CharacteristicData& cd, double eps_null) {
    PredicateReport r;
    const Mat b0 = taylor_coefficient(cd, 0);
    if (b0.cols() == 0) {
        r.verdict = Verdict::True;
        r.note = "E1 = 0";
        return r;
    }
    const Mat g = b0.adjoint() * b0;
    r.residual = opnorm(g);  // largest eigenvalue of P Theta^* P Theta on E1
    const Mat fixed = eigenspace(g, 1.0, eps_null);
    r.verdict = fixed.cols() == 0 ? Verdict::True : Verdict::False;
    r.note = std::to_string(fixed.cols()) + "-dimensional fixed-point space";
    return r;
}

PredicateReport is_predictable(const CharacteristicData& cd, double tol, double eps_null) {
    PredicateReport r;
    const int n = cd.tower1.level();
    r.frontier = predicate_frontier(cd);
    const int cols = cd.tower1.offset(r.frontier + 1);
    const int g0 = cd.tower1.grade_dim(0);
    const Mat a = cd.Theta.leftCols(cols);
    const PsdRoot delta = psd_root_range(identity(cols) - a.adjoint() * a, eps_null, 1e-9);
    const Mat tail_range = delta.range.cols() == 0 ? Mat(cols, 0) : range_basis(delta.root.rightCols(cols - g0), 1e-10);
    r.residual = subspace_distance(delta.range, tail_range);
    r.verdict = r.residual < tol ? Verdict::True : Verdict::False;
    r.note = "ranges compared on grades <= " + std::to_string(r.frontier) + " at level " + std::to_string(n);
    return r;
}

}  // namespace opm
