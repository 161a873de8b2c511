#include "opmodel/fock.hpp"

#include <cmath>

namespace opm {

double geometric_tail(double r, int n) {
    if (r >= 1.0) return std::numeric_limits<double>::infinity();
    return std::pow(r, n + 1) / (1.0 - r);
}

TruncatedFock::TruncatedFock(const Correspondence& e, int level, const FockOptions& opt)
    : base_(e), level_(level) {
    if (level < 0) throw Error(ErrorKind::Precondition, "Fock level must be nonnegative");
    grades_.push_back(identity_correspondence(e.algebra));
    quotients_.push_back(Mat());
    offsets_ = {0, grades_[0].dim};
    for (int k = 1; k <= level; ++k) {
        if (static_cast<long>(e.dim) * grades_.back().dim > opt.max_dim)
            throw Error(ErrorKind::Resource, "Fock grade " + std::to_string(k) + " exceeds the dimension cap");
        TensorResult t = tensor_with_quotient(e, grades_.back(), opt.eps_null);
        grades_.push_back(std::move(t.product));
        quotients_.push_back(std::move(t.quotient));
        offsets_.push_back(offsets_.back() + grades_.back().dim);
    }
}

std::vector<int> TruncatedFock::grade_dims() const {
    std::vector<int> d;
    for (const auto& g : grades_) d.push_back(g.dim);
    return d;
}

Mat TruncatedFock::creation_operator(const Vec& xi) const {
    Mat t = Mat::Zero(dim(), dim());
    for (int k = 1; k <= level_; ++k)
        t.block(offsets_[k], offsets_[k - 1], grades_[k].dim, grades_[k - 1].dim) =
            quotients_[k] * kron(xi, identity(grades_[k - 1].dim));
    return t;
}

Mat TruncatedFock::phi_infty(const Element& a) const {
    std::vector<Mat> b;
    for (const auto& g : grades_) b.push_back(g.left_action(a));
    return block_diag(b);
}

Mat TruncatedFock::grade_projection(int k) const {
    Mat p = Mat::Zero(dim(), dim());
    p.block(offsets_[k], offsets_[k], grades_[k].dim, grades_[k].dim) = identity(grades_[k].dim);
    return p;
}

double TruncatedFock::creation_relation_residual(const Vec& xi, const Vec& eta) const {
    const Element ip = base_.inner_product(xi, eta);
    const Mat tx = creation_operator(xi), te = creation_operator(eta), ph = phi_infty(ip);
    double r = 0.0;
    for (int k = 0; k < level_; ++k) {
        const auto& g0 = grades_[k];
        const auto& g1 = grades_[k + 1];
        const Mat a = tx.block(offsets_[k + 1], offsets_[k], g1.dim, g0.dim);
        const Mat b = te.block(offsets_[k + 1], offsets_[k], g1.dim, g0.dim);
        const Mat p = ph.block(offsets_[k], offsets_[k], g0.dim, g0.dim);
        for (int u = 0; u < base_.algebra.dim(); ++u)
            r = std::max(r, opnorm(a.adjoint() * g1.inner[u] * b - g0.inner[u] * p));
    }
    return r;
}

FockTower::FockTower(const Correspondence& e, const Representation& sigma, int level, const FockOptions& opt)
    : base_(e), level_(level) {
    if (level < 0) throw Error(ErrorKind::Precondition, "Fock level must be nonnegative");
    if (e.algebra != sigma.algebra) throw Error(ErrorKind::Structural, "tower: algebra mismatch");
    reps_.push_back(sigma);
    levels_.emplace_back();
    offsets_ = {0, sigma.dim()};
    for (int k = 1; k <= level; ++k) {
        if (static_cast<long>(e.dim) * reps_.back().dim() > opt.max_dim)
            throw Error(ErrorKind::Resource, "Fock grade " + std::to_string(k) + " exceeds the dimension cap");
        levels_.push_back(localize(e, reps_.back(), opt.eps_null));
        reps_.push_back(levels_.back().rep);
        offsets_.push_back(offsets_.back() + reps_.back().dim());
    }
}

std::vector<int> FockTower::grade_dims() const {
    std::vector<int> d;
    for (const auto& r : reps_) d.push_back(r.dim());
    return d;
}

Mat FockTower::create(int k, const Vec& xi) const { return levels_[k].create(xi); }

Mat FockTower::create_power(int k, const Vec& xi) const {
    Mat c = identity(grade_dim(0));
    for (int j = 1; j <= k; ++j) c = create(j, xi) * c;
    return c;
}

Mat FockTower::creation_operator(const Vec& xi) const {
    Mat t = Mat::Zero(dim(), dim());
    for (int k = 1; k <= level_; ++k)
        t.block(offsets_[k], offsets_[k - 1], grade_dim(k), grade_dim(k - 1)) = create(k, xi);
    return t;
}

Mat FockTower::phi_infty(const Element& a) const {
    std::vector<Mat> b;
    for (const auto& r : reps_) b.push_back(rep_matrix(r, a));
    return block_diag(b);
}

Representation FockTower::induced() const { return direct_sum(reps_).rep; }

Mat FockTower::grade_embedding(int k) const {
    Mat e = Mat::Zero(dim(), grade_dim(k));
    e.middleRows(offsets_[k], grade_dim(k)) = identity(grade_dim(k));
    return e;
}

Mat FockTower::grade_projection(int k) const { return projector(grade_embedding(k)); }

Mat ampliate_power(const FockTower& to, int tg, const Mat& x, const FockTower& from, int fg, int j) {
    Mat y = x;
    for (int i = 1; i <= j; ++i) y = ampliate(to.localized(tg + i), y, from.localized(fg + i));
    return y;
}

Mat block(const Mat& op, const FockTower& to, int i, const FockTower& from, int j) {
    return op.block(to.offset(i), from.offset(j), to.grade_dim(i), from.grade_dim(j));
}

}  // namespace opm
