#pragma once

#include "opmodel/linalg.hpp"

#include <vector>

namespace opm {

// M = M_{n_1}(C) + ... + M_{n_B}(C).  Matrix units e^b_{ij} are numbered
// consecutively, block by block, row-major inside a block.
class Algebra {
public:
    Algebra() = default;
    explicit Algebra(std::vector<int> blocks);

    const std::vector<int>& blocks() const { return blocks_; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }
    int block_size(int b) const { return blocks_[b]; }
    int dim() const { return units_; }  // sum n_b^2
    int unit_offset(int b) const { return unit_offset_[b]; }
    int unit(int b, int i, int j) const { return unit_offset_[b] + i * blocks_[b] + j; }

    struct UnitIndex {
        int block, row, col;
    };
    UnitIndex unit_index(int u) const { return index_[u]; }

    bool operator==(const Algebra& o) const { return blocks_ == o.blocks_; }
    bool operator!=(const Algebra& o) const { return !(*this == o); }

private:
    std::vector<int> blocks_;
    std::vector<int> unit_offset_;
    std::vector<UnitIndex> index_;
    int units_ = 0;
};

using Element = std::vector<Mat>;

Element zero_element(const Algebra& alg);
Element unit_element(const Algebra& alg);  // the identity
Element matrix_unit(const Algebra& alg, int u);
Element adjoint(const Element& a);
Element multiply(const Element& a, const Element& b);
Element add(const Element& a, const Element& b);
Element scale(const Element& a, cplx c);
void check_element(const Algebra& alg, const Element& a);

// Coordinates of a in the matrix-unit basis, and back.
Vec coordinates(const Algebra& alg, const Element& a);
Element from_coordinates(const Algebra& alg, const Vec& x);
double element_norm(const Element& a);  // max operator norm over blocks

// pi(a) = B (sum_b a_b (x) I_{m_b}) B^*; an empty basis_change stands for I.
struct Representation {
    Algebra algebra;
    std::vector<int> mult;
    Mat basis_change;

    int dim() const;
    bool faithful() const;
};

Representation multiplicity_rep(const Algebra& alg, std::vector<int> mult);
Mat rep_matrix(const Representation& rep, const Element& a);
Mat rep_unit(const Representation& rep, int u);

// Recovers the multiplicity form of a concrete *-representation from the
// images of all matrix units.
Representation identify_rep(const Algebra& alg, const std::vector<Mat>& unit_images, int dim);

// Restriction of rep to the reducing subspace spanned by the orthonormal
// columns of basis.
Representation restrict_rep(const Representation& rep, const Mat& basis);

// Max residual of rep(a)X - X rep'(a) over matrix units (X : H' -> H).
double intertwining_residual(const Representation& to, const Mat& x, const Representation& from);

// Direct sum in carrier order; embeddings[i] is the isometry of summand i.
struct RepSum {
    Representation rep;
    std::vector<Mat> embeddings;
};
RepSum direct_sum(const std::vector<Representation>& reps);

struct Commutant {
    Algebra algebra;
    std::vector<int> source_block;  // block of M that each commutant block comes from
    Representation embedding;       // the inclusion of rep(M)' on the carrier
};
Commutant commutant(const Representation& rep);
Element commutant_element(const Commutant& c, const Representation& rep, const Mat& x);

struct CentralProjection {
    std::vector<bool> mask;
    Element element(const Algebra& alg) const;
};
CentralProjection kernel_central_projection(const Representation& t1, const Representation& t2);

struct Supplement {
    Representation tau;   // tau_0 + t1 + t2, in that carrier order
    Representation tau0;
    Mat iota1, iota2;     // carriers of t1, t2 inside the carrier of tau
    Mat q1, q2;
};
Supplement supplement(const Representation& t1, const Representation& t2);

}  // namespace opm
