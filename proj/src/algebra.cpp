#include "opmodel/algebra.hpp"

#include <numeric>

namespace opm {

Algebra::Algebra(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw Error(ErrorKind::Structural, "algebra needs at least one block");
    for (int b = 0; b < num_blocks(); ++b) {
        const int n = blocks_[b];
        if (n < 1) throw Error(ErrorKind::Structural, "block sizes must be positive");
        unit_offset_.push_back(units_);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) index_.push_back({b, i, j});
        units_ += n * n;
    }
}

Element zero_element(const Algebra& alg) {
    Element a;
    for (int n : alg.blocks()) a.push_back(Mat::Zero(n, n));
    return a;
}

Element unit_element(const Algebra& alg) {
    Element a;
    for (int n : alg.blocks()) a.push_back(identity(n));
    return a;
}

Element matrix_unit(const Algebra& alg, int u) {
    Element a = zero_element(alg);
    const auto ix = alg.unit_index(u);
    a[ix.block](ix.row, ix.col) = 1.0;
    return a;
}

Element adjoint(const Element& a) {
    Element out;
    for (const auto& m : a) out.push_back(m.adjoint());
    return out;
}

Element multiply(const Element& a, const Element& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::Structural, "element block mismatch");
    Element out;
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] * b[i]);
    return out;
}

Element add(const Element& a, const Element& b) {
    if (a.size() != b.size()) throw Error(ErrorKind::Structural, "element block mismatch");
    Element out;
    for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i] + b[i]);
    return out;
}

Element scale(const Element& a, cplx c) {
    Element out;
    for (const auto& m : a) out.push_back(c * m);
    return out;
}

void check_element(const Algebra& alg, const Element& a) {
    if (static_cast<int>(a.size()) != alg.num_blocks())
        throw Error(ErrorKind::Structural, "element block count does not match algebra");
    for (int b = 0; b < alg.num_blocks(); ++b)
        if (a[b].rows() != alg.block_size(b) || a[b].cols() != alg.block_size(b))
            throw Error(ErrorKind::Structural, "element block has the wrong size");
}

Vec coordinates(const Algebra& alg, const Element& a) {
    check_element(alg, a);
    Vec x(alg.dim());
    for (int u = 0; u < alg.dim(); ++u) {
        const auto ix = alg.unit_index(u);
        x(u) = a[ix.block](ix.row, ix.col);
    }
    return x;
}

Element from_coordinates(const Algebra& alg, const Vec& x) {
    Element a = zero_element(alg);
    for (int u = 0; u < alg.dim(); ++u) {
        const auto ix = alg.unit_index(u);
        a[ix.block](ix.row, ix.col) = x(u);
    }
    return a;
}

double element_norm(const Element& a) {
    double n = 0.0;
    for (const auto& m : a) n = std::max(n, opnorm(m));
    return n;
}

int Representation::dim() const {
    int d = 0;
    for (int b = 0; b < algebra.num_blocks(); ++b) d += algebra.block_size(b) * mult[b];
    return d;
}

bool Representation::faithful() const {
    for (int m : mult)
        if (m == 0) return false;
    return true;
}

Representation multiplicity_rep(const Algebra& alg, std::vector<int> mult) {
    if (static_cast<int>(mult.size()) != alg.num_blocks())
        throw Error(ErrorKind::Structural, "multiplicity vector length does not match algebra");
    for (int m : mult)
        if (m < 0) throw Error(ErrorKind::Structural, "negative multiplicity");
    return Representation{alg, std::move(mult), Mat()};
}

Mat rep_matrix(const Representation& rep, const Element& a) {
    check_element(rep.algebra, a);
    std::vector<Mat> blocks;
    for (int b = 0; b < rep.algebra.num_blocks(); ++b)
        if (rep.mult[b] > 0) blocks.push_back(kron(a[b], identity(rep.mult[b])));
    const Mat d = block_diag(blocks);
    if (rep.basis_change.size() == 0) return d;
    return rep.basis_change * d * rep.basis_change.adjoint();
}

Mat rep_unit(const Representation& rep, int u) {
    return rep_matrix(rep, matrix_unit(rep.algebra, u));
}

Representation identify_rep(const Algebra& alg, const std::vector<Mat>& images, int dim) {
    if (static_cast<int>(images.size()) != alg.dim())
        throw Error(ErrorKind::Structural, "identify_rep: need one image per matrix unit");
    std::vector<int> mult(alg.num_blocks(), 0);
    std::vector<Mat> ranges;
    for (int b = 0; b < alg.num_blocks(); ++b) {
        const Mat& p = images[alg.unit(b, 0, 0)];
        ranges.push_back(dim == 0 ? Mat(0, 0) : eigenspace(p, 1.0, 1e-6));
        mult[b] = static_cast<int>(ranges.back().cols());
    }
    Representation rep{alg, mult, Mat::Zero(dim, dim)};
    if (rep.dim() != dim)
        throw Error(ErrorKind::Numerical, "identify_rep: images do not form a unital representation");
    int off = 0;
    for (int b = 0; b < alg.num_blocks(); ++b) {
        const int n = alg.block_size(b), m = mult[b];
        for (int i = 0; i < n; ++i) {
            const Mat cols = images[alg.unit(b, i, 0)] * ranges[b];
            rep.basis_change.middleCols(off + i * m, m) = cols;
        }
        off += n * m;
    }
    return rep;
}

Representation restrict_rep(const Representation& rep, const Mat& basis) {
    std::vector<Mat> images;
    for (int u = 0; u < rep.algebra.dim(); ++u)
        images.push_back(basis.adjoint() * rep_unit(rep, u) * basis);
    return identify_rep(rep.algebra, images, static_cast<int>(basis.cols()));
}

double intertwining_residual(const Representation& to, const Mat& x, const Representation& from) {
    double r = 0.0;
    for (int u = 0; u < to.algebra.dim(); ++u)
        r = std::max(r, opnorm(rep_unit(to, u) * x - x * rep_unit(from, u)));
    return r;
}

RepSum direct_sum(const std::vector<Representation>& reps) {
    if (reps.empty()) throw Error(ErrorKind::Structural, "direct_sum of nothing");
    const Algebra& alg = reps.front().algebra;
    const int nb = alg.num_blocks();
    std::vector<int> mult(nb, 0);
    int total = 0;
    for (const auto& r : reps) {
        if (r.algebra != alg) throw Error(ErrorKind::Structural, "direct_sum: algebra mismatch");
        for (int b = 0; b < nb; ++b) mult[b] += r.mult[b];
        total += r.dim();
    }
    // Column c of perm sends standard-form index c of the sum to the
    // concatenated standard forms of the summands.
    Mat perm = Mat::Zero(total, total);
    std::vector<int> carrier_off(reps.size(), 0);
    for (size_t k = 1; k < reps.size(); ++k) carrier_off[k] = carrier_off[k - 1] + reps[k - 1].dim();
    int col_off = 0;
    std::vector<int> summand_block_off(reps.size(), 0);
    for (int b = 0; b < nb; ++b) {
        const int n = alg.block_size(b);
        int m_before = 0;
        for (size_t k = 0; k < reps.size(); ++k) {
            const int mk = reps[k].mult[b];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < mk; ++j)
                    perm(carrier_off[k] + summand_block_off[k] + i * mk + j,
                         col_off + i * mult[b] + m_before + j) = 1.0;
            summand_block_off[k] += n * mk;
            m_before += mk;
        }
        col_off += n * mult[b];
    }
    std::vector<Mat> bcs;
    for (const auto& r : reps) bcs.push_back(r.basis_change.size() == 0 ? identity(r.dim()) : r.basis_change);
    RepSum out;
    out.rep = Representation{alg, mult, block_diag(bcs) * perm};
    for (size_t k = 0; k < reps.size(); ++k) {
        Mat e = Mat::Zero(total, reps[k].dim());
        e.middleRows(carrier_off[k], reps[k].dim()) = identity(reps[k].dim());
        out.embeddings.push_back(e);
    }
    return out;
}

Commutant commutant(const Representation& rep) {
    const Algebra& alg = rep.algebra;
    std::vector<int> cblocks, src;
    for (int b = 0; b < alg.num_blocks(); ++b)
        if (rep.mult[b] > 0) {
            cblocks.push_back(rep.mult[b]);
            src.push_back(b);
        }
    if (cblocks.empty()) throw Error(ErrorKind::Structural, "commutant of the zero representation");
    Commutant c{Algebra(cblocks), src, {}};
    // The commutant acts as I_{n_b} (x) R_b; in its own standard form that is
    // R_b (x) I_{n_b}, so a block permutation converts between the two.
    const int d = rep.dim();
    Mat perm = Mat::Zero(d, d);
    int off = 0;
    std::vector<int> cmult;
    for (size_t k = 0; k < src.size(); ++k) {
        const int n = alg.block_size(src[k]), m = cblocks[k];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) perm(off + i * m + j, off + j * n + i) = 1.0;
        off += n * m;
        cmult.push_back(n);
    }
    const Mat bc = rep.basis_change.size() == 0 ? identity(d) : rep.basis_change;
    c.embedding = Representation{c.algebra, cmult, bc * perm};
    return c;
}

Element commutant_element(const Commutant& c, const Representation& rep, const Mat& x) {
    const Mat bc = rep.basis_change.size() == 0 ? identity(rep.dim()) : rep.basis_change;
    const Mat y = bc.adjoint() * x * bc;
    Element out;
    int off = 0, k = 0;
    for (int b = 0; b < rep.algebra.num_blocks(); ++b) {
        const int n = rep.algebra.block_size(b), m = rep.mult[b];
        if (m > 0) {
            out.push_back(y.block(off, off, m, m));
            ++k;
        }
        off += n * m;
    }
    (void)c;
    return out;
}

Element CentralProjection::element(const Algebra& alg) const {
    Element a = zero_element(alg);
    for (int b = 0; b < alg.num_blocks(); ++b)
        if (mask[b]) a[b] = identity(alg.block_size(b));
    return a;
}

CentralProjection kernel_central_projection(const Representation& t1, const Representation& t2) {
    if (t1.algebra != t2.algebra) throw Error(ErrorKind::Structural, "representations over different algebras");
    CentralProjection e;
    for (int b = 0; b < t1.algebra.num_blocks(); ++b) e.mask.push_back(t1.mult[b] == 0 && t2.mult[b] == 0);
    return e;
}

Supplement supplement(const Representation& t1, const Representation& t2) {
    const CentralProjection e = kernel_central_projection(t1, t2);
    std::vector<int> m0;
    for (bool bit : e.mask) m0.push_back(bit ? 1 : 0);
    Supplement s;
    s.tau0 = multiplicity_rep(t1.algebra, m0);
    RepSum sum = direct_sum({s.tau0, t1, t2});
    s.tau = sum.rep;
    s.iota1 = sum.embeddings[1];
    s.iota2 = sum.embeddings[2];
    s.q1 = projector(s.iota1);
    s.q2 = projector(s.iota2);
    return s;
}

}  // namespace opm
