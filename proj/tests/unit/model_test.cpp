#include "opmodel/crossed.hpp"
#include "opmodel/fixtures.hpp"
#include "opmodel/model.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace opm {
namespace {

CovariantRep catalog_rep(const std::string& name) { return load_catalog_fixture(name).rep(); }

TEST(Model, CanonicalEquivalenceForTheJordanCell) {
    const CanonicalEquivalence ce = canonical_equivalence(IsometricDilation(catalog_rep("B"), 6));
    EXPECT_LT(ce.unitarity, 1e-12);
    EXPECT_LT(ce.subspace, 1e-12);
    EXPECT_LT(ce.intertwining_v, 1e-12);
    EXPECT_LT(ce.intertwining_rho, 1e-12);
    EXPECT_LT(ce.model_operator, 1e-12);
    EXPECT_LT(ce.model.isometry, 1e-10);
    EXPECT_LT(ce.model.covariance, 1e-10);
    EXPECT_LT(ce.model.graph_invariance, 1e-10);
}

TEST(Model, CanonicalEquivalenceConvergesForTheScalar) {
    const CanonicalEquivalence ce = canonical_equivalence(IsometricDilation(catalog_rep("A"), 60));
    EXPECT_LT(ce.unitarity, 1e-8);
    EXPECT_LT(ce.intertwining_v, 1e-8);
    EXPECT_LT(ce.singular_values, 1e-8);
}

TEST(Model, MinimalityAndWitnesses) {
    const CharacteristicData cd = characteristic_operator(IsometricDilation(catalog_rep("B"), 6));
    const Witnesses w = construct_witnesses(cd);
    EXPECT_EQ(check_minimality(w.model).verdict, Verdict::True);
    const IsomorphismReport r = verify_isomorphism(cd, w.model_data, w.W1, w.W2);
    EXPECT_TRUE(r.isomorphic);
    EXPECT_LT(r.residual, 1e-10);
}

TEST(Model, WrongWitnessesAreRejected) {
    const CharacteristicData cd = characteristic_operator(IsometricDilation(catalog_rep("B"), 6));
    const Mat bad = 2.0 * identity(1);
    EXPECT_THROW(verify_isomorphism(cd, cd, bad, identity(1)), Error);
    const IsomorphismReport flipped = verify_isomorphism(cd, cd, identity(1), -identity(1));
    EXPECT_FALSE(flipped.isomorphic);
}

TEST(Model, InvariantSubspacesRoundTrip) {
    const CharacteristicData cd = characteristic_operator(IsometricDilation(catalog_rep("B"), 6));
    const ModelRep model = model_rep(model_spaces(cd));
    const Mat& h = model.spaces.H;
    const Mat line = h * range_basis(h.adjoint() * model.V(Vec::Ones(1)) * h, 1e-10);
    EXPECT_EQ(line.cols(), 1);
    for (const Mat& m : {Mat(h.rows(), 0), line, h}) {
        EXPECT_LT(invariance_residual(model, m), 1e-10);
        const Factorization f = factor_from_subspace(model, m);
        EXPECT_LT(f.product_residual, 1e-10);
        EXPECT_LT(f.decomposition, 1e-10);
        const SubspaceResult back = subspace_from_factorization(model, f.theta1, f.theta2);
        EXPECT_LT(subspace_distance(back.M, m), 1e-8);
    }
    // the orthogonal complement of the line is not invariant
    EXPECT_GT(invariance_residual(model, h * orth_complement(h.adjoint() * line, 2)), 0.1);
}

TEST(Model, CommutantLiftingKeepsTheNorm) {
    const CovariantRep b = catalog_rep("B");
    for (const Mat& x : {b.Ttilde, Mat(cplx(0, 2) * identity(2))}) {
        const LiftResult l = lift_commutant(b, x, 6);
        EXPECT_LT(l.constraint, 1e-10);
        EXPECT_LT(l.compression, 1e-10);
        EXPECT_NEAR(l.norm_xi, l.norm_x, 1e-8);
    }
}

TEST(Model, LiftingNeedsACommutingOperator) {
    const CovariantRep b = catalog_rep("B");
    EXPECT_THROW(lift_commutant(b, b.Ttilde.adjoint(), 6), Error);
}

TEST(Crossed, Ell2PictureIsExact) {
    for (const char* name : {"A", "E"}) {
        const FixtureFile f = load_catalog_fixture(name);
        const CrossedData c = f.crossed ? *f.crossed : make_crossed(f.algebra, identity(1), f.sigma, *f.ttilde);
        const FockTower t(crossed_correspondence(c), c.sigma, 5);
        const Ell2Identification w = ell2_identification(c.alpha, t);
        EXPECT_LT(w.unitarity, 1e-12) << name;
        EXPECT_LT(w.shift, 1e-12) << name;
        EXPECT_LT(w.diagonal, 1e-12) << name;
    }
}

TEST(Crossed, RejectsNonIntertwiningT) {
    const Algebra c2({1, 1});
    Mat swap = Mat::Zero(2, 2);
    swap(0, 1) = swap(1, 0) = 1.0;
    Mat t = Mat::Zero(2, 2);
    t(0, 0) = 0.5;  // must map vertex 1 to vertex 0 and back
    EXPECT_THROW(make_crossed(c2, swap, multiplicity_rep(c2, {1, 1}), t), Error);
}

TEST(Crossed, ToeplitzCommutant) {
    const CrossedData e = *load_catalog_fixture("E").crossed;
    const int level = 3;
    const int n = 2 * (level + 1);
    EXPECT_EQ(toeplitz_commutant_check(e, identity(n), level).verdict, Verdict::True);
    EXPECT_EQ(toeplitz_symbol_dim(e, level), symbol_space_dim(FockTower(crossed_correspondence(e), e.sigma, level)));
}

TEST(Crossed, ClassicalCoefficientsMatchTheModel) {
    const CrossedData e = *load_catalog_fixture("E").crossed;
    const SzNFComparison s = sznf_compare(e, polar_grid(0.5, 2, 4), 12);
    EXPECT_LT(s.taylor, 1e-12);
    EXPECT_LE(s.max_deviation, s.tail_bound);
}

TEST(Crossed, GridMustStayInsideTheDisc) {
    const CrossedData e = *load_catalog_fixture("E").crossed;
    try {
        sznf_compare(e, {cplx(1.0, 0.0)}, 4);
        FAIL() << "accepted |z| = 1";
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::Domain);
    }
}

TEST(Crossed, BilateralExtensionIsWithinItsTail) {
    const CrossedData e = *load_catalog_fixture("E").crossed;
    const BilateralReport b = bilateral_extension_check(e, 8);
    EXPECT_LT(b.toeplitz, 1e-12);
    EXPECT_LE(b.root_shift, b.tail_bound);
}

}  // namespace
}  // namespace opm
