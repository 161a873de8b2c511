#include "opmodel/oracles.hpp"

namespace opm {

Mat oracle_gram(const Correspondence& e, const Representation& sigma) {
    const int h = sigma.dim(), d = e.dim;
    std::vector<Mat> units;
    for (int u = 0; u < e.algebra.dim(); ++u) units.push_back(rep_unit(sigma, u));
    Mat g = Mat::Zero(d * h, d * h);
    for (int p = 0; p < d; ++p)
        for (int q = 0; q < d; ++q)
            for (int u = 0; u < e.algebra.dim(); ++u) {
                const cplx c = e.inner[u](p, q);  // coefficient of e_u in <e_p, e_q>
                if (c == cplx(0.0)) continue;
                for (int i = 0; i < h; ++i)
                    for (int j = 0; j < h; ++j) g(p * h + i, q * h + j) += c * units[u](i, j);
            }
    return g;
}

OracleCommutant oracle_commutant(const std::vector<Mat>& generators, int cap) {
    if (generators.empty()) throw Error(ErrorKind::Structural, "oracle_commutant needs at least one generator");
    const int n = static_cast<int>(generators[0].rows());
    if (n * n > cap) throw Error(ErrorKind::Resource, "oracle_commutant: " + std::to_string(n * n) +
                                                          " unknowns exceed the cap of " + std::to_string(cap));
    const int k = static_cast<int>(generators.size());
    Mat sys = Mat::Zero(k * n * n, n * n);
    for (int g = 0; g < k; ++g) {
        const Mat& a = generators[g];
        // vec(X a - a X) = (a^T (x) I - I (x) a) vec(X)
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                for (int s = 0; s < n; ++s) {
                    sys(g * n * n + c * n + r, s * n + r) += a(s, c);
                    sys(g * n * n + c * n + r, c * n + s) -= a(r, s);
                }
    }
    OracleCommutant out;
    Eigen::JacobiSVD<Mat> svd(sys, Eigen::ComputeFullV);
    const Eigen::VectorXd sv = svd.singularValues();
    int rank = 0;
    const double cut = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cut) ++rank;
    out.basis = svd.matrixV().rightCols(n * n - rank);
    out.dim = n * n - rank;
    return out;
}

std::vector<Mat> induced_generators(const FockTower& tower) {
    std::vector<Mat> out;
    const Correspondence& e = tower.base();
    for (int p = 0; p < e.dim; ++p) out.push_back(tower.creation_operator(Vec::Unit(e.dim, p)));
    for (int u = 0; u < e.algebra.dim(); ++u) out.push_back(tower.phi_infty(matrix_unit(e.algebra, u)));
    return out;
}

}  // namespace opm
