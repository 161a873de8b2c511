#include "opmodel/algebra.hpp"
#include "opmodel/oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace opm {
namespace {

Element random_element(const Algebra& alg, test::Rng& rng) {
    Element a;
    for (int n : alg.blocks()) a.push_back(rng.mat(n, n));
    return a;
}

double element_distance(const Element& a, const Element& b) {
    double d = 0.0;
    for (size_t i = 0; i < a.size(); ++i) d = std::max(d, residual(a[i], b[i]));
    return d;
}

TEST(Algebra, UnitNumberingIsBlockwiseRowMajor) {
    const Algebra alg({2, 1});
    EXPECT_EQ(alg.dim(), 5);
    EXPECT_EQ(alg.unit(0, 1, 0), 2);
    EXPECT_EQ(alg.unit(1, 0, 0), 4);
    const auto idx = alg.unit_index(3);
    EXPECT_EQ(idx.block, 0);
    EXPECT_EQ(idx.row, 1);
    EXPECT_EQ(idx.col, 1);
}

TEST(Algebra, RejectsEmptyAndNonPositiveBlocks) {
    EXPECT_THROW(Algebra(std::vector<int>{}), Error);
    EXPECT_THROW(Algebra({2, 0}), Error);
}

TEST(Algebra, CoordinatesRoundTrip) {
    test::Rng rng(1);
    const Algebra alg({2, 3, 1});
    const Element a = random_element(alg, rng);
    EXPECT_LT(element_distance(from_coordinates(alg, coordinates(alg, a)), a), 1e-15);
}

TEST(Algebra, MultiplicationIsAssociativeAndUnital) {
    test::Rng rng(2);
    const Algebra alg({2, 1});
    for (int trial = 0; trial < 10; ++trial) {
        const Element a = random_element(alg, rng), b = random_element(alg, rng), c = random_element(alg, rng);
        EXPECT_LT(element_distance(multiply(multiply(a, b), c), multiply(a, multiply(b, c))), 1e-12);
        EXPECT_LT(element_distance(multiply(unit_element(alg), a), a), 1e-15);
    }
}

// rep_matrix is a unital *-homomorphism for every multiplicity and basis change.
TEST(Representation, IsStarHomomorphism) {
    test::Rng rng(3);
    const Algebra alg({2, 1});
    Representation rep = multiplicity_rep(alg, {2, 3});
    rep.basis_change = polar_unitary(rng.mat(rep.dim(), rep.dim()));
    for (int trial = 0; trial < 10; ++trial) {
        const Element a = random_element(alg, rng), b = random_element(alg, rng);
        EXPECT_LT(residual(rep_matrix(rep, multiply(a, b)), rep_matrix(rep, a) * rep_matrix(rep, b)), 1e-12);
        EXPECT_LT(residual(rep_matrix(rep, adjoint(a)), rep_matrix(rep, a).adjoint()), 1e-12);
    }
    EXPECT_LT(residual(rep_matrix(rep, unit_element(alg)), identity(rep.dim())), 1e-14);
}

TEST(Representation, IdentifyRecoversMultiplicities) {
    test::Rng rng(4);
    const Algebra alg({2, 1});
    Representation rep = multiplicity_rep(alg, {1, 2});
    rep.basis_change = polar_unitary(rng.mat(rep.dim(), rep.dim()));
    std::vector<Mat> images;
    for (int u = 0; u < alg.dim(); ++u) images.push_back(rep_unit(rep, u));
    const Representation found = identify_rep(alg, images, rep.dim());
    EXPECT_EQ(found.mult, rep.mult);
    for (int u = 0; u < alg.dim(); ++u) EXPECT_LT(residual(rep_unit(found, u), images[u]), 1e-10);
}

// The commutant of a multiplicity representation has dimension sum m_b^2;
// checked against the brute-force null space of the commutation equations.
TEST(Representation, CommutantMatchesOracle) {
    const Algebra alg({2, 1});
    for (const std::vector<int>& mult : {std::vector<int>{1, 1}, {2, 1}, {1, 3}, {2, 2}}) {
        const Representation rep = multiplicity_rep(alg, mult);
        const Commutant c = commutant(rep);
        std::vector<Mat> gens;
        for (int u = 0; u < alg.dim(); ++u) gens.push_back(rep_unit(rep, u));
        EXPECT_EQ(c.algebra.dim(), oracle_commutant(gens).dim);
        EXPECT_EQ(c.algebra.dim(), mult[0] * mult[0] + mult[1] * mult[1]);
    }
}

TEST(Representation, SupplementIsFaithfulAndContainsBoth) {
    const Algebra alg({1, 1, 1});
    const Representation t1 = multiplicity_rep(alg, {1, 0, 0}), t2 = multiplicity_rep(alg, {1, 1, 0});
    const Supplement s = supplement(t1, t2);
    for (int m : s.tau.mult) EXPECT_GE(m, 1);
    EXPECT_LT(intertwining_residual(s.tau, s.iota1, t1), 1e-12);
    EXPECT_LT(intertwining_residual(s.tau, s.iota2, t2), 1e-12);
}

TEST(Linalg, PsdSqrtAndRanges) {
    test::Rng rng(5);
    const Mat x = rng.mat(5, 3);
    const Mat p = x * x.adjoint();
    const Mat r = psd_sqrt(p, 1e-9);
    EXPECT_LT(residual(r * r, p), 1e-10);
    EXPECT_EQ(range_basis(p, 1e-10).cols(), 3);
    EXPECT_EQ(null_basis(p, 1e-10).cols(), 2);
    EXPECT_THROW(psd_sqrt(-identity(2), 1e-9), Error);
}

TEST(Linalg, SubspaceDistanceIsBasisIndependent) {
    test::Rng rng(6);
    const Mat a = range_basis(rng.mat(6, 2), 1e-12);
    const Mat b = a * polar_unitary(rng.mat(2, 2));
    EXPECT_LT(subspace_distance(a, b), 1e-12);
    EXPECT_GT(subspace_distance(a, orth_complement(a, 6).leftCols(2)), 0.99);
}

}  // namespace
}  // namespace opm
