#include "opmodel/dilation.hpp"
#include "opmodel/fixtures.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>

namespace opm {
namespace {

CovariantRep catalog_rep(const std::string& name) { return load_catalog_fixture(name).rep(); }

TEST(Covrep, RejectsNonContractions) {
    Mat t(1, 1);
    t << 1.5;
    try {
        make_covrep(free_correspondence(1), multiplicity_rep(Algebra({1}), {1}), t);
        FAIL() << "accepted ||T~|| > 1";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Validation);
    }
}

TEST(Covrep, RejectsWrongShape) {
    EXPECT_THROW(make_covrep(free_correspondence(2), multiplicity_rep(Algebra({1}), {1}), identity(1)), Error);
}

TEST(Covrep, RejectsNonIntertwiningOperators) {
    // over C^2 with sigma = C^2, the graph edge 0 -> 1 only allows maps into vertex 1
    const Correspondence e = from_graph(2, {{0, 1}});
    const Representation sigma = multiplicity_rep(e.algebra, {1, 1});
    const LocalizedSpace loc = localize(e, sigma);
    Mat t = Mat::Zero(2, loc.dim);
    t.row(0).setConstant(0.5);
    t.row(1).setConstant(0.5);
    EXPECT_THROW(make_covrep(e, sigma, t), Error);
}

// T~ Delta = Delta_* T~ and the defect identities hold for random contractions.
TEST(Defects, IntertwineThroughTtilde) {
    test::Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const Mat t = rng.contraction(2, 4, 0.9);
        const CovariantRep rep = make_covrep(free_correspondence(2), multiplicity_rep(Algebra({1}), {2}), t);
        const DefectData d = defects(rep);
        EXPECT_LT(residual(t * d.Delta, d.DeltaStar * t), 1e-10);
        EXPECT_LT(residual(d.Delta * d.Delta, identity(4) - t.adjoint() * t), 1e-10);
        EXPECT_LT(residual(d.DeltaStar * d.DeltaStar, identity(2) - t * t.adjoint()), 1e-10);
        EXPECT_EQ(d.D.cols(), 4);
        EXPECT_EQ(d.Dstar.cols(), 2);
    }
}

TEST(Classify, Catalog) {
    const std::map<std::string, std::pair<Verdict, Verdict>> expected = {
        {"A", {Verdict::True, Verdict::True}},   {"B", {Verdict::True, Verdict::True}},
        {"C", {Verdict::True, Verdict::True}},   {"D", {Verdict::True, Verdict::True}},
        {"E", {Verdict::True, Verdict::True}},   {"F", {Verdict::False, Verdict::False}},
        {"G", {Verdict::False, Verdict::False}},
    };
    for (const auto& [name, want] : expected) {
        const ClassificationReport c = classify(catalog_rep(name), 6);
        EXPECT_EQ(c.is_C0, want.first) << name;
        EXPECT_EQ(c.is_cnc, want.second) << name;
    }
}

TEST(Classify, NilpotentDecayIsExact) {
    const ClassificationReport c = classify(catalog_rep("B"), 4);
    EXPECT_EQ(c.decay, 0.0);
}

TEST(Classify, UnitaryFlipIsCoisometric) {
    const CovariantRep f = catalog_rep("F");
    const ClassificationReport c = classify(f, 6);
    const CncDecomposition d = cnc_decomposition(f, c);
    EXPECT_EQ(d.H1.cols(), 0);
    EXPECT_EQ(d.H2.cols(), 2);
}

TEST(Classify, MixedSplitsIntoTheConstructedBlocks) {
    const CovariantRep g = catalog_rep("G");
    const CncDecomposition d = cnc_decomposition(g, classify(g, 6));
    const MixedBlocks b = mixed_blocks();
    EXPECT_LT(subspace_distance(d.H1, b.jordan), 1e-8);
    EXPECT_LT(subspace_distance(d.H2, b.unitary), 1e-8);
    EXPECT_LT(d.upper_right, 1e-10);
    EXPECT_LT(d.reconstruction, 1e-10);
}

class CatalogDilation : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogDilation, IsAMinimalIsometricDilation) {
    const IsometricDilation dil(catalog_rep(GetParam()), 5);
    EXPECT_LT(dil.isometry_residual(), 1e-10);
    EXPECT_LT(dil.dilation_residual(), 1e-10);
    EXPECT_LT(dil.covariance_residual(), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(All, CatalogDilation, ::testing::Values("A", "B", "C", "D", "E", "F", "G"));

// Truncation cuts V~ off at the top grade, so the wandering projections are
// exactly orthogonal only when nothing reaches that grade.
TEST(Dilation, WanderingProjectionsAreOrthogonalWhenExact) {
    for (const char* name : {"B", "F", "G"})
        EXPECT_LT(projection_chain(IsometricDilation(catalog_rep(name), 5)).orthogonality, 1e-10) << name;
    EXPECT_GT(projection_chain(IsometricDilation(catalog_rep("A"), 5)).orthogonality, 1e-3);
}

// The block-sparse products agree with the dense V~ on every catalog entry.
TEST(Dilation, StructuredProductsMatchDense) {
    for (const char* name : {"A", "C", "D", "G"}) {
        const IsometricDilation dil(catalog_rep(name), 3);
        const Mat& v = dil.Vtilde();
        const Mat x = projection_chain(dil).Q[0];
        const Mat y = dil.ampliate(x);
        EXPECT_LT(residual(dil.vtilde_times(y), v * y), 1e-12) << name;
        EXPECT_LT(residual(dil.times_vtilde_adjoint(y), y * v.adjoint()), 1e-12) << name;
        EXPECT_LT(residual(dil.L_map(x), v * y * v.adjoint()), 1e-12) << name;
    }
}

TEST(Dilation, ProjectionChainVerdicts) {
    EXPECT_EQ(projection_chain(IsometricDilation(catalog_rep("B"), 6)).verdict, PinfVerdict::ExactZero);
    const ProjectionChain f = projection_chain(IsometricDilation(catalog_rep("F"), 6));
    EXPECT_NE(f.verdict, PinfVerdict::ExactZero);
    EXPECT_GT(opnorm(f.Pinf), 0.5);
}

TEST(Dilation, WanderingSubspaceAndGenerator) {
    const IsometricDilation dil(catalog_rep("B"), 6);
    const ProjectionChain chain = projection_chain(dil);
    const K0Data k0 = k0_and_u(dil, chain);
    EXPECT_LT(k0.isometry_residual, 1e-10);
    EXPECT_LT(k0.intertwining_residual, 1e-10);
    EXPECT_LT(k0.generator_residual, 1e-10);
    const WanderingMap w = wandering_map(dil, k0.K0);
    EXPECT_TRUE(w.wandering);
    EXPECT_LT(w.isometry_residual, 1e-10);
    // H itself is not wandering: T is not zero
    EXPECT_FALSE(wandering_map(dil, dil.embed_h()).wandering);
}

TEST(Dilation, ShiftOfWanderingProjections) {
    const IsometricDilation dil(catalog_rep("B"), 6);
    const WanderingShiftReport q = check_wandering_shift(dil, projection_chain(dil));
    EXPECT_LT(q.shift, 1e-10);
    EXPECT_LT(q.qinf, 1e-10);
}

TEST(Dilation, CoisometricPartOfTheFlipIsUnitary) {
    const IsometricDilation dil(catalog_rep("F"), 5);
    const DilationSplit s = decompose(dil, projection_chain(dil));
    EXPECT_EQ(s.coisometric.cols(), 2);
    EXPECT_LT(s.unitarity_residual, 1e-10);
}

TEST(Ledger, GeometricTail) {
    EXPECT_DOUBLE_EQ(geometric_tail(0.5, 3), 0.0625 / 0.5);
    const TruncationLedger l = IsometricDilation(catalog_rep("A"), 6).ledger();
    // the dilation itself is exact below the top grade
    EXPECT_EQ(l.level, 6);
    EXPECT_EQ(l.frontier, 5);
    EXPECT_EQ(l.tail_bound, 0.0);
}

}  // namespace
}  // namespace opm
