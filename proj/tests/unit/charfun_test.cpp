#include "opmodel/charfun.hpp"
#include "opmodel/fixtures.hpp"
#include "opmodel/oracles.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

namespace opm {
namespace {

CovariantRep catalog_rep(const std::string& name) { return load_catalog_fixture(name).rep(); }

TEST(Dual, DimensionsOverTheComplexNumbers) {
    const Algebra c({1});
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m) {
            const DualCorrespondence d = dual(free_correspondence(n), multiplicity_rep(c, {m}));
            EXPECT_EQ(d.dim(), n * m * m);
            EXPECT_LT(dual_module_residual(d), 1e-10);
            EXPECT_TRUE(validate(d.structure).passed());
        }
}

TEST(Dual, SwapCase) {
    const FixtureFile e = load_catalog_fixture("E");
    const DualCorrespondence d = dual(e.E, e.sigma);
    EXPECT_EQ(d.dim(), 2);
    for (const Mat& eta : d.basis)
        for (int u = 0; u < e.algebra.dim(); ++u) {
            const Element a = matrix_unit(e.algebra, u);
            EXPECT_LT(residual(eta * rep_matrix(e.sigma, a), rep_matrix(d.loc.rep, a) * eta), 1e-12);
        }
}

TEST(Dual, TensorIsomorphismPreservesInnerProducts) {
    const Correspondence e1 = from_graph(2, {{0, 1}, {1, 1}}), e2 = from_graph(2, {{1, 0}, {0, 0}});
    const DualTensorIso iso = dual_tensor_iso(e1, e2, multiplicity_rep(e1.algebra, {1, 2}));
    EXPECT_EQ(iso.source_dim, iso.target_dim);
    EXPECT_LT(iso.inner_residual, 1e-10);
}

TEST(Fourier, IsUnitaryAndSymbolsRoundTrip) {
    const DualCorrespondence d = dual(free_correspondence(2), multiplicity_rep(Algebra({1}), {2}));
    const FourierTransform f(d, 3);
    EXPECT_LT(f.unitarity_residual(), 1e-10);
    Vec e0 = Vec::Zero(d.dim());
    e0(0) = 1.0;
    const Mat u = f.full();
    const Mat psi = u.adjoint() * f.dual_tower().creation_operator(e0) * u;
    const Symbol s = hat_transform(f, psi);
    EXPECT_LT(residual(s.coefficients[1], d.basis[0]), 1e-10);
    EXPECT_LT(residual(check_transform(f, s), psi), 1e-10);
}

// The analytic commutant of the induced representation, computed two ways.
TEST(Fourier, SymbolSpaceMatchesOracleCommutant) {
    for (const char* name : {"A", "B", "E"}) {
        const CovariantRep rep = catalog_rep(name);
        for (int level = 1; level <= 3; ++level) {
            const FockTower t(rep.E, rep.sigma, level);
            EXPECT_EQ(symbol_space_dim(t), oracle_commutant(induced_generators(t)).dim) << name << " N=" << level;
        }
    }
}

class CatalogCharfun : public ::testing::TestWithParam<std::string> {};

TEST_P(CatalogCharfun, IsAContractiveIntertwiner) {
    const FixtureFile f = load_catalog_fixture(GetParam());
    const CharacteristicData cd = characteristic_operator(IsometricDilation(f.rep(), std::min(f.options.fock_level, 8)));
    const CommutationReport c = intertwining_residual(cd);
    EXPECT_LT(c.creation, 1e-8);
    EXPECT_LT(c.diagonal, 1e-8);
    EXPECT_LT(contraction_excess(cd), 1e-8);
    EXPECT_LT(grade0_residual(cd), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(CncFixtures, CatalogCharfun, ::testing::Values("A", "B", "C", "D", "E"));

TEST(Charfun, ScalarTaylorCoefficients) {
    // Theta(z) = -t + (1 - t^2) z (1 - t z)^{-1} for t = 0.5
    const CharacteristicData cd = characteristic_operator(IsometricDilation(catalog_rep("A"), 10));
    EXPECT_NEAR(taylor_coefficient(cd, 0)(0, 0).real(), -0.5, 1e-12);
    for (int k = 1; k <= 10; ++k) EXPECT_NEAR(std::abs(taylor_coefficient(cd, k)(0, 0)), 0.75 * std::pow(0.5, k - 1), 1e-12);
}

TEST(Charfun, SeriesAndResolventAgreeForTheJordanCell) {
    const CovariantRep b = catalog_rep("B");
    const IsometricDilation dil(b, 4);
    const CharacteristicData cd = characteristic_operator(dil);
    const CharFunction cf = to_function(cd);
    EXPECT_LT(cf.corner_residual, 1e-10);
    for (const cplx z : polar_grid(0.95, 4, 6)) {
        const Vec xi = Vec::Constant(1, z);
        const Mat s = evaluate_series(cf, xi).value;
        EXPECT_LT(residual(s, evaluate_resolvent(b, dil.defect(), xi).value), 1e-12);
        EXPECT_LT(residual(s, evaluate_operator_series(cd, xi).value), 1e-12);
    }
}

// The series differs from the resolvent only by its tail.
TEST(Charfun, SeriesConvergesToTheResolvent) {
    const CovariantRep c = catalog_rep("C");
    double previous = 1.0;
    for (int level : {2, 4}) {
        const IsometricDilation dil(c, level);
        const CharFunction cf = to_function(characteristic_operator(dil));
        Vec xi(2);
        xi << 0.4, cplx(0.0, 0.3);
        const double dev = residual(evaluate_series(cf, xi).value, evaluate_resolvent(c, dil.defect(), xi).value);
        EXPECT_LT(dev, previous);
        previous = dev;
    }
}

TEST(Charfun, EvaluationOutsideTheBallIsADomainError) {
    const CovariantRep a = catalog_rep("A");
    const IsometricDilation dil(a, 4);
    try {
        evaluate_resolvent(a, dil.defect(), Vec::Constant(1, 1.2));
        FAIL() << "evaluated outside the unit ball";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);
    }
}

TEST(Predicates, InnerForNilpotentNotForConstants) {
    EXPECT_EQ(is_inner(characteristic_operator(IsometricDilation(catalog_rep("B"), 6))).verdict, Verdict::True);
    const Representation one = multiplicity_rep(Algebra({1}), {1});
    const CharacteristicData half =
        characteristic_data_from_coefficients(free_correspondence(1), one, one, {Mat::Constant(1, 1, 0.5)}, 6);
    EXPECT_EQ(is_inner(half).verdict, Verdict::False);
}

TEST(Predicates, PureAndPredictable) {
    for (const char* name : {"A", "B", "D", "E"}) {
        const FixtureFile f = load_catalog_fixture(name);
        const CharacteristicData cd = characteristic_operator(IsometricDilation(f.rep(), f.options.fock_level));
        EXPECT_EQ(is_pure(cd).verdict, Verdict::True) << name;
        EXPECT_EQ(is_predictable(cd).verdict, Verdict::True) << name;
    }
    const Representation one = multiplicity_rep(Algebra({1}), {1});
    const Correspondence e = free_correspondence(1);
    EXPECT_EQ(is_pure(characteristic_data_from_coefficients(e, one, one, {identity(1)}, 4)).verdict, Verdict::False);
    EXPECT_EQ(is_predictable(characteristic_data_from_coefficients(e, one, one, {Mat::Zero(1, 1)}, 4)).verdict,
              Verdict::False);
}

}  // namespace
}  // namespace opm
