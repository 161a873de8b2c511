#include "opmodel/crossed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace opm {

namespace {

Vec unit_coords(const Algebra& m) { return coordinates(m, unit_element(m)); }

Mat blk(const Mat& a, int i, int j, int rows, int cols) { return a.block(i * rows, j * cols, rows, cols); }

// Theta in the l^2 picture: W2 Theta W1^*.
Mat ell2_theta(const CrossedData& c, const CharacteristicData& cd) {
    const Mat w1 = ell2_identification(c.alpha, cd.tower1).W;
    const Mat w2 = ell2_identification(c.alpha, cd.tower2).W;
    return w2 * cd.Theta * w1.adjoint();
}

void require_cnc(const CovariantRep& rep, int level, double tol) {
    const ClassificationReport cls = classify(rep, level, tol);
    if (cls.is_cnc == Verdict::False) throw Error(ErrorKind::Precondition, "t is not c.n.c.");
    if (cls.is_cnc == Verdict::Undecided)
        throw Error(ErrorKind::Undecided, "c.n.c. is undecided at level " + std::to_string(level));
}

}  // namespace

Mat rep_alpha_power(const Representation& tau, const Mat& alpha, int k, const Vec& a) {
    Vec x = a;
    for (int i = 0; i < k; ++i) x = alpha * x;
    return rep_matrix(tau, from_coordinates(tau.algebra, x));
}

double crossed_intertwining_residual(const CrossedData& c) {
    double worst = 0.0;
    for (int u = 0; u < c.M.dim(); ++u) {
        const Vec eu = Vec::Unit(c.M.dim(), u);
        worst = std::max(worst, residual(c.t * rep_alpha_power(c.sigma, c.alpha, 1, eu),
                                         rep_alpha_power(c.sigma, c.alpha, 0, eu) * c.t));
    }
    return worst;
}

CrossedData make_crossed(const Algebra& m, const Mat& alpha, const Representation& sigma, const Mat& t,
                         double tol) {
    CrossedData c{m, alpha, sigma, t};
    (void)from_endomorphism(m, alpha, tol);
    if (sigma.algebra != m) throw Error(ErrorKind::Structural, "sigma is not a representation of M");
    if (t.rows() != sigma.dim() || t.cols() != sigma.dim())
        throw Error(ErrorKind::Structural, "t must act on the carrier of sigma");
    const double res = crossed_intertwining_residual(c);
    if (res > tol)
        throw Error(ErrorKind::Validation,
                    "t sigma(alpha(a)) != sigma(a) t (residual " + std::to_string(res) + ")");
    if (opnorm(t) > 1.0 + tol) throw Error(ErrorKind::Validation, "||t|| > 1");
    return c;
}

Correspondence crossed_correspondence(const CrossedData& c) { return from_endomorphism(c.M, c.alpha); }

CovariantRep crossed_rep(const CrossedData& c, double tol) {
    const Correspondence e = crossed_correspondence(c);
    const FockTower tower(e, c.sigma, 1);
    const Ell2Identification w = ell2_identification(c.alpha, tower);
    return make_covrep(e, c.sigma, c.t * w.grades[1], tol);
}

Ell2Identification ell2_identification(const Mat& alpha, const FockTower& tower) {
    const Representation& tau = tower.rep(0);
    const int d = tower.base().dim, h = tau.dim(), n = tower.level();
    Ell2Identification out;
    out.grades.push_back(identity(h));
    for (int k = 1; k <= n; ++k) {
        const int prev = tower.grade_dim(k - 1);
        Mat pre(h, d * prev);
        for (int p = 0; p < d; ++p)
            pre.middleCols(p * prev, prev) = rep_alpha_power(tau, alpha, k - 1, Vec::Unit(d, p)) * out.grades[k - 1];
        out.grades.push_back(pre * tower.localized(k).lift);
    }
    out.W = block_diag(out.grades);
    const int total = static_cast<int>(out.W.cols());
    out.unitarity = std::max(residual(out.W.adjoint() * out.W, identity(total)),
                             residual(out.W * out.W.adjoint(), identity(static_cast<int>(out.W.rows()))));
    for (int p = 0; p < d; ++p) {
        const Vec xi = Vec::Unit(d, p);
        out.shift = std::max(out.shift, residual(out.W * tower.creation_operator(xi) * out.W.adjoint(),
                                                 weighted_shift(tau, alpha, xi, n)));
    }
    for (int u = 0; u < tau.algebra.dim(); ++u)
        out.diagonal = std::max(out.diagonal,
                                residual(out.W * tower.phi_infty(matrix_unit(tau.algebra, u)) * out.W.adjoint(),
                                         diagonal_action(tau, alpha, Vec::Unit(tau.algebra.dim(), u), n)));
    return out;
}

Mat weighted_shift(const Representation& tau, const Mat& alpha, const Vec& xi, int level) {
    const int h = tau.dim();
    Mat s = Mat::Zero((level + 1) * h, (level + 1) * h);
    for (int k = 1; k <= level; ++k) s.block(k * h, (k - 1) * h, h, h) = rep_alpha_power(tau, alpha, k - 1, xi);
    return s;
}

Mat diagonal_action(const Representation& tau, const Mat& alpha, const Vec& a, int level) {
    const int h = tau.dim();
    Mat s = Mat::Zero((level + 1) * h, (level + 1) * h);
    for (int k = 0; k <= level; ++k) s.block(k * h, k * h, h, h) = rep_alpha_power(tau, alpha, k, a);
    return s;
}

ToeplitzCheck toeplitz_commutant_check(const CrossedData& c, const Mat& r, int level, double tol) {
    const int h = c.sigma.dim(), n = level + 1;
    if (r.rows() != n * h || r.cols() != n * h)
        throw Error(ErrorKind::Structural, "operator does not act on l^2_{0..N}(H)");
    ToeplitzCheck out;
    for (int k = 0; k <= level; ++k) out.symbol.push_back(blk(r, k, 0, h, h));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j > i)
                out.triangular = std::max(out.triangular, opnorm(blk(r, i, j, h, h)));
            else
                out.toeplitz = std::max(out.toeplitz, residual(blk(r, i, j, h, h), out.symbol[i - j]));
        }
    for (int k = 0; k <= level; ++k)
        for (int u = 0; u < c.M.dim(); ++u) {
            const Vec eu = Vec::Unit(c.M.dim(), u);
            out.relation = std::max(out.relation, residual(out.symbol[k] * rep_alpha_power(c.sigma, c.alpha, 0, eu),
                                                           rep_alpha_power(c.sigma, c.alpha, k, eu) * out.symbol[k]));
        }
    const bool ok = out.triangular <= tol && out.toeplitz <= tol && out.relation <= tol;
    out.verdict = ok ? Verdict::True : Verdict::False;
    return out;
}

Mat assemble_toeplitz(const std::vector<Mat>& symbol, int level) {
    if (symbol.empty()) throw Error(ErrorKind::Structural, "empty symbol");
    const int h = static_cast<int>(symbol[0].rows()), n = level + 1;
    Mat r = Mat::Zero(n * h, n * h);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j)
            if (i - j < static_cast<int>(symbol.size())) r.block(i * h, j * h, h, h) = symbol[i - j];
    return r;
}

double toeplitz_commutation_residual(const CrossedData& c, const Mat& r, int level) {
    const int h = c.sigma.dim(), d = c.M.dim();
    double worst = 0.0;
    for (int p = 0; p < d; ++p) {
        const Mat s = weighted_shift(c.sigma, c.alpha, Vec::Unit(d, p), level);
        worst = std::max(worst, opnorm((s * r - r * s).leftCols(level * h)));
    }
    for (int u = 0; u < d; ++u) {
        const Mat psi = diagonal_action(c.sigma, c.alpha, Vec::Unit(d, u), level);
        worst = std::max(worst, opnorm(psi * r - r * psi));
    }
    return worst;
}

int toeplitz_symbol_dim(const CrossedData& c, int level) {
    const int h = c.sigma.dim(), d = c.M.dim();
    int total = 0;
    for (int k = 0; k <= level; ++k) {
        // vec(z s) - vec(s' z) = (s^T (x) I - I (x) s') vec(z)
        Mat sys(d * h * h, h * h);
        for (int u = 0; u < d; ++u) {
            const Vec eu = Vec::Unit(d, u);
            const Mat s = rep_alpha_power(c.sigma, c.alpha, 0, eu), sk = rep_alpha_power(c.sigma, c.alpha, k, eu);
            sys.middleRows(u * h * h, h * h) = kron(s.transpose(), identity(h)) - kron(identity(h), sk);
        }
        total += static_cast<int>(null_basis(sys, 1e-10).cols());
    }
    return total;
}

Mat classical_charfun(const Mat& t, cplx lambda) {
    const int h = static_cast<int>(t.rows());
    const Mat delta = psd_sqrt(identity(h) - t.adjoint() * t, 1e-9);
    const Mat delta_star = psd_sqrt(identity(h) - t * t.adjoint(), 1e-9);
    Eigen::FullPivLU<Mat> lu(identity(h) - lambda * t.adjoint());
    if (!lu.isInvertible()) throw Error(ErrorKind::Numerical, "I - lambda t^* is singular");
    return -t + lambda * delta_star * lu.solve(delta);
}

std::vector<Mat> classical_coefficients(const Mat& t, int count) {
    const int h = static_cast<int>(t.rows());
    const Mat delta = psd_sqrt(identity(h) - t.adjoint() * t, 1e-9);
    const Mat delta_star = psd_sqrt(identity(h) - t * t.adjoint(), 1e-9);
    std::vector<Mat> out;
    if (count > 0) out.push_back(-t);
    Mat power = identity(h);
    for (int k = 1; k < count; ++k) {
        out.push_back(delta_star * power * delta);
        power = power * t.adjoint();
    }
    return out;
}

std::vector<cplx> polar_grid(double r, int radial, int angular) {
    std::vector<cplx> out;
    for (int j = 0; j < radial; ++j)
        for (int k = 0; k < angular; ++k)
            out.push_back(std::polar(r * (j + 1) / radial, 2.0 * std::numbers::pi * k / angular));
    return out;
}

SzNFComparison sznf_compare(const CrossedData& c, const std::vector<cplx>& grid, int level, double tol) {
    for (const cplx z : grid)
        if (std::abs(z) >= 1.0) throw Error(ErrorKind::Domain, "grid point outside the open unit disc");
    const CovariantRep rep = crossed_rep(c, tol);
    require_cnc(rep, level, tol);
    const IsometricDilation dil(rep, level);
    const CharacteristicData cd = characteristic_operator(dil, tol);
    const CharFunction cf = to_function(cd);
    const DefectData& def = dil.defect();

    const Mat w1 = ell2_identification(c.alpha, FockTower(rep.E, c.sigma, 1)).grades[1];
    const Mat wd = w1 * def.D;  // D coordinates -> H
    const Mat pd = wd * wd.adjoint();
    const Vec xi0 = unit_coords(c.M);
    const double nt = opnorm(c.t);

    SzNFComparison out;
    out.level = level;
    for (const cplx z : grid) {
        const PointEvaluation pe = evaluate_series(cf, z * xi0);
        Mat mv = def.Dstar * pe.value * wd.adjoint();
        Mat cv = classical_charfun(c.t, std::conj(z)) * pd;
        const double dev = residual(mv, cv);
        out.points.push_back({z, dev});
        out.max_deviation = std::max(out.max_deviation, dev);
        out.r = std::max(out.r, std::abs(z) * nt);
        out.model_values.push_back(std::move(mv));
        out.classical_values.push_back(std::move(cv));
    }
    out.tail_bound = out.r < 1.0 ? geometric_tail(out.r, level) : -1.0;

    const Ell2Identification w2 = ell2_identification(c.alpha, cd.tower2);
    const std::vector<Mat> classical = classical_coefficients(c.t, level + 1);
    for (int k = 0; k <= level; ++k) {
        const Mat mk = def.Dstar * w2.grades[k] * taylor_coefficient(cd, k) * wd.adjoint();
        out.taylor = std::max(out.taylor, residual(mk, classical[k] * pd));
    }
    return out;
}

BilateralReport bilateral_extension_check(const CrossedData& c, int level, double tol) {
    const CovariantRep rep = crossed_rep(c, tol);
    require_cnc(rep, level, tol);
    const IsometricDilation dil(rep, level);
    const CharacteristicData cd = characteristic_operator(dil, tol);
    const Mat th = ell2_theta(c, cd);
    const int h1 = cd.tower1.grade_dim(0), h2 = cd.tower2.grade_dim(0), n = level + 1;

    BilateralReport out;
    out.level = level;
    out.frontier = level / 2;
    std::vector<Mat> symbol;
    for (int k = 0; k <= level; ++k) symbol.push_back(blk(th, k, 0, h2, h1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.toeplitz = std::max(out.toeplitz, j > i ? opnorm(blk(th, i, j, h2, h1))
                                                        : residual(blk(th, i, j, h2, h1), symbol[i - j]));

    // window -N..N, index i stored at block i + N
    const int m = 2 * level + 1;
    Mat big = Mat::Zero(m * h2, m * h1);
    for (int i = 0; i < m; ++i)
        for (int j = std::max(0, i - level); j <= i; ++j) big.block(i * h2, j * h1, h2, h1) = symbol[i - j];
    // Cutting the symbol at grade N can push the window slightly past norm 1;
    // the excess is reported and clamped in the root.
    const Mat gap = identity(m * h1) - big.adjoint() * big;
    out.window_excess = std::max(0.0, -Eigen::SelfAdjointEigenSolver<Mat>(gap).eigenvalues().minCoeff());
    const Mat dt = psd_sqrt(gap, out.window_excess + 1e-9);
    const Mat d = psd_sqrt(identity(n * h1) - th.adjoint() * th, 1e-9);

    const int f = (out.frontier + 1) * h1;
    const Mat a = dt.middleCols(level * h1, f);
    const Mat b = d.leftCols(f);
    out.norm_identity = residual(a.adjoint() * a, b.adjoint() * b);
    Mat ib = Mat::Zero(m * h1, f);
    ib.middleRows(level * h1, n * h1) = b;
    out.root_shift = opnorm(a - ib);

    const double nt = opnorm(c.t);
    out.tail_bound = nt < 1.0 - tol ? geometric_tail(nt, level - out.frontier) : cd.ledger.tail_bound;
    return out;
}

}  // namespace opm
