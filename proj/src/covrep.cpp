#include "opmodel/covrep.hpp"

namespace opm {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::False: return "false";
        case Verdict::True: return "true";
        default: return "undecided";
    }
}

double covariance_residual(const CovariantRep& rep) {
    return intertwining_residual(rep.sigma, rep.Ttilde, rep.loc.rep);
}

CovariantRep make_covrep(const Correspondence& e, const Representation& sigma, const Mat& ttilde, double tol) {
    CovariantRep rep{e, sigma, localize(e, sigma), ttilde};
    if (ttilde.rows() != sigma.dim() || ttilde.cols() != rep.loc.dim)
        throw Error(ErrorKind::Structural, "T~ must be dim(H) x dim(E (x) H) = " + std::to_string(sigma.dim()) +
                                               " x " + std::to_string(rep.loc.dim));
    const double n = opnorm(ttilde);
    if (n > 1.0 + tol) throw Error(ErrorKind::Validation, "contractivity: ||T~|| = " + std::to_string(n));
    const double c = covariance_residual(rep);
    if (c > tol) throw Error(ErrorKind::Validation, "covariance: intertwining residual " + std::to_string(c));
    return rep;
}

std::vector<Mat> generalized_powers(const CovariantRep& rep, const FockTower& tower, int n) {
    if (n > tower.level()) throw Error(ErrorKind::Precondition, "power exceeds the tower level");
    std::vector<Mat> p{identity(rep.h_dim())};
    for (int k = 1; k <= n; ++k)
        p.push_back(rep.Ttilde * ampliate_power(tower, 0, p[k - 1], tower, k - 1, 1));
    return p;
}

DefectData defects(const CovariantRep& rep, double eps_null, double eps_psd) {
    const Mat& t = rep.Ttilde;
    DefectData d;
    const PsdRoot a = psd_root_range(identity(static_cast<int>(t.cols())) - t.adjoint() * t, eps_null, eps_psd);
    const PsdRoot b = psd_root_range(identity(static_cast<int>(t.rows())) - t * t.adjoint(), eps_null, eps_psd);
    d.Delta = a.root;
    d.D = a.range;
    d.DeltaStar = b.root;
    d.Dstar = b.range;
    d.tau1 = restrict_rep(rep.loc.rep, d.D);
    d.tau2 = restrict_rep(rep.sigma, d.Dstar);
    return d;
}

ClassificationReport classify(const CovariantRep& rep, int level, double tol) {
    ClassificationReport r;
    r.level = level;
    const int h = rep.h_dim();
    r.norm = opnorm(rep.Ttilde);
    const FockTower tower(rep.E, rep.sigma, level);
    const std::vector<Mat> pw = generalized_powers(rep, tower, level);
    Mat cumulative = Mat::Zero(h, h);
    Mat candidate = identity(h);
    for (int n = 1; n <= level; ++n) {
        cumulative += identity(h) - pw[n] * pw[n].adjoint();
        candidate = eigenspace(cumulative, 0.0, tol);
        r.h2_dims.push_back(static_cast<int>(candidate.cols()));
    }
    r.H2 = candidate;
    r.decay = level > 0 ? opnorm(pw[level] * pw[level].adjoint()) : 1.0;
    const int m = static_cast<int>(r.h2_dims.size());
    r.stabilized = (m >= 2 && r.h2_dims[m - 1] == r.h2_dims[m - 2]) || (m >= 1 && r.h2_dims[m - 1] == 0);

    if (m >= 1 && r.h2_dims[m - 1] == 0)
        r.is_cnc = Verdict::True;
    else if (r.stabilized)
        r.is_cnc = Verdict::False;

    if (r.norm < 1.0 - tol) {
        r.is_C0 = Verdict::True;
        r.c0_reason = "strict contraction";
    } else if (level > 0 && r.decay < tol) {
        r.is_C0 = Verdict::True;
        r.c0_reason = "generalized powers vanish at level " + std::to_string(level);
    } else if (r.is_cnc == Verdict::False) {
        r.is_C0 = Verdict::False;
        r.c0_reason = "nonzero coisometric part";
    } else {
        r.c0_reason = "undecided at level " + std::to_string(level);
    }
    return r;
}

CncDecomposition cnc_decomposition(const CovariantRep& rep, const ClassificationReport& report) {
    if (report.is_cnc == Verdict::Undecided)
        throw Error(ErrorKind::Undecided, "coisometric part has not stabilized at level " + std::to_string(report.level));
    CncDecomposition c;
    const int h = rep.h_dim();
    c.H2 = report.H2;
    c.H1 = orth_complement(c.H2, h);
    c.sigma1 = restrict_rep(rep.sigma, c.H1);
    c.sigma2 = restrict_rep(rep.sigma, c.H2);
    const LocalizedSpace l1 = localize(rep.E, c.sigma1), l2 = localize(rep.E, c.sigma2);
    const Mat a1 = ampliate(rep.loc, c.H1, l1), a2 = ampliate(rep.loc, c.H2, l2);
    const Mat& t = rep.Ttilde;
    c.T1 = c.H1.adjoint() * t * a1;
    c.T2 = c.H2.adjoint() * t * a2;
    c.X = c.H2.adjoint() * t * a1;
    c.upper_right = opnorm(c.H1.adjoint() * t * a2);
    const Mat j = hstack({c.H1, c.H2}, h);
    const Mat amp = hstack({a1, a2}, rep.loc.dim);
    Mat lower = Mat::Zero(h, l1.dim + l2.dim);
    lower.block(0, 0, c.T1.rows(), c.T1.cols()) = c.T1;
    lower.block(c.T1.rows(), 0, c.X.rows(), c.X.cols()) = c.X;
    lower.block(c.T1.rows(), c.T1.cols(), c.T2.rows(), c.T2.cols()) = c.T2;
    c.reconstruction = opnorm(t - j * lower * amp.adjoint());
    return c;
}

}  // namespace opm
