#pragma once

#include "opmodel/correspondence.hpp"

#include <vector>

namespace opm {

// Identities involving a truncated operator hold exactly on grades <= frontier;
// beyond that the recorded tail bound applies (negative when none is known).
struct TruncationLedger {
    int level = 0;
    int frontier = 0;
    double tail_bound = 0.0;
};

// r^{N+1}/(1-r), the geometric tail used throughout when ||T~|| <= r < 1.
double geometric_tail(double r, int n);

struct FockOptions {
    double eps_null = 1e-10;
    int max_dim = 20000;
};

// M + E + E^{(x)2} + ... + E^{(x)N} as right Hilbert M-modules; grade k is
// tensor(E, grade k-1) and grade 0 is the identity correspondence.
class TruncatedFock {
public:
    TruncatedFock(const Correspondence& e, int level, const FockOptions& opt = {});

    int level() const { return level_; }
    const Correspondence& base() const { return base_; }
    const Correspondence& grade(int k) const { return grades_[k]; }
    std::vector<int> grade_dims() const;
    int offset(int k) const { return offsets_[k]; }
    int dim() const { return offsets_.back(); }

    Mat creation_operator(const Vec& xi) const;
    Mat phi_infty(const Element& a) const;
    Mat grade_projection(int k) const;
    // max over u of || <T_xi x, T_eta y>_u - <x, phi_inf(<xi,eta>) y>_u || on grades < N
    double creation_relation_residual(const Vec& xi, const Vec& eta) const;

private:
    Correspondence base_;
    int level_;
    std::vector<Correspondence> grades_;
    std::vector<Mat> quotients_;
    std::vector<int> offsets_;
};

// F_N(E) (x)_sigma H realised grade by grade: grade 0 is H and grade k is
// E (x) (grade k-1) localized over the representation carried by grade k-1.
class FockTower {
public:
    FockTower() = default;
    FockTower(const Correspondence& e, const Representation& sigma, int level, const FockOptions& opt = {});

    int level() const { return level_; }
    const Correspondence& base() const { return base_; }
    const Representation& rep(int k) const { return reps_[k]; }
    const LocalizedSpace& localized(int k) const { return levels_[k]; }  // k >= 1
    int grade_dim(int k) const { return reps_[k].dim(); }
    int offset(int k) const { return offsets_[k]; }
    int dim() const { return offsets_.back(); }
    std::vector<int> grade_dims() const;

    // T_xi (x) I from grade k-1 to grade k
    Mat create(int k, const Vec& xi) const;
    // L_{xi^{(x)k}} : grade 0 -> grade k
    Mat create_power(int k, const Vec& xi) const;

    Mat creation_operator(const Vec& xi) const;  // on the whole truncated space
    Mat phi_infty(const Element& a) const;
    Representation induced() const;  // phi_inf (x) I as a representation
    Mat grade_projection(int k) const;
    Mat grade_embedding(int k) const;

private:
    Correspondence base_;
    int level_ = 0;
    std::vector<Representation> reps_;
    std::vector<LocalizedSpace> levels_;
    std::vector<int> offsets_;
};

// I_{E^{(x)j}} (x) X, mapping grade fg+j of `from` to grade tg+j of `to`,
// for an intertwiner X from grade fg of `from` to grade tg of `to`.
Mat ampliate_power(const FockTower& to, int tg, const Mat& x, const FockTower& from, int fg, int j);

// Grade block (i, j) of an operator between two towers.
Mat block(const Mat& op, const FockTower& to, int i, const FockTower& from, int j);

}  // namespace opm
