// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "opmodel/fixtures.hpp"
#include "opmodel/model.hpp"
#include "opmodel/oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace opm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

CovariantRep catalog_rep(const std::string& name) { return load_catalog_fixture(name).rep(); }

Outcome dilation_isometry() {
    Outcome o;
    for (const char* name : {"A", "B", "C", "D", "E"}) {
        const auto t0 = Clock::now();
        const IsometricDilation dil(catalog_rep(name), 6);
        const double res = dil.isometry_residual();
        const double t = seconds_since(t0);
        o.detail << " " << name << "=" << res << " (" << t << "s)";
        o.require(res <= 1e-10, std::string(name) + " residual");
        o.require(t < 1.0, std::string(name) + " runtime");
    }
    return o;
}

Outcome classical_cross_check() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto crossed_of = [](const std::string& name) {
        const CovariantRep rep = catalog_rep(name);
        return make_crossed(rep.E.algebra, identity(1), rep.sigma, rep.Ttilde);
    };
    const SzNFComparison sa = sznf_compare(crossed_of("A"), polar_grid(0.9, 10, 10), 40);
    const SzNFComparison sb = sznf_compare(crossed_of("B"), polar_grid(0.9, 10, 10), 4);
    const double t = seconds_since(t0);
    o.detail << " A(N=40, " << sa.points.size() << " pts)=" << sa.max_deviation << " B(N=4)=" << sb.max_deviation << " ("
             << t << "s)";
    o.require(sa.points.size() == 100, "grid size");
    o.require(sa.max_deviation <= 1e-8, "A deviation");
    o.require(sb.max_deviation <= 1e-12, "B deviation");
    o.require(t < 5.0, "runtime");
    return o;
}

Outcome two_path_evaluation() {
    Outcome o;
    for (const char* name : {"A", "B", "C"}) {
        const FixtureFile f = load_catalog_fixture(name);
        const CovariantRep rep = f.rep();
        const int level = f.options.fock_level;
        const IsometricDilation dil(rep, level);
        const CharFunction cf = to_function(characteristic_operator(dil));
        Vec dir = Vec::Ones(rep.E.dim) / std::sqrt(static_cast<double>(rep.E.dim));
        double worst_ratio = 0.0, worst = 0.0;
        for (const cplx z : polar_grid(0.9, 5, 5)) {
            const Vec xi = z * dir;
            const PointEvaluation s = evaluate_series(cf, xi);
            const PointEvaluation r = evaluate_resolvent(rep, dil.defect(), xi);
            const double dev = residual(s.value, r.value);
            const double bound = std::pow(r.r, level + 1) / (1.0 - r.r);
            worst = std::max(worst, dev);
            // an exact (nilpotent) case has r = 0 only when T~ = 0; compare with rounding slack
            if (dev > 1e-14) worst_ratio = std::max(worst_ratio, dev / bound);
        }
        o.detail << " " << name << "(N=" << level << ") max=" << worst << " worst dev/bound=" << worst_ratio;
        if (std::string(name) == "B")
            o.require(worst <= 1e-12, "B deviation");
        else
            o.require(worst_ratio <= 1.0, std::string(name) + " deviation above r^{N+1}/(1-r)");
    }
    return o;
}

Outcome inner_vs_c0() {
    Outcome o;
    const CovariantRep b = catalog_rep("B");
    const CharacteristicData cb = characteristic_operator(IsometricDilation(b, 6));
    const PredicateReport ib = is_inner(cb);
    const ClassificationReport clb = classify(b, 6);
    o.detail << " B inner=" << ib.residual << " C0=" << to_string(clb.is_C0);
    o.require(ib.verdict == Verdict::True && ib.residual <= 1e-10, "B inner");
    o.require(clb.is_C0 == Verdict::True, "B is C0");

    const CharacteristicData ca = characteristic_operator(IsometricDilation(catalog_rep("A"), 40));
    const PredicateReport ia = is_inner(ca);
    const double bound = std::pow(0.5, 41) / 0.5;
    o.detail << " A(N=40) inner=" << ia.residual << " (bound " << bound << ")";
    o.require(ia.residual <= bound, "A inner residual");

    // Theta = 0.5, constant: a strict contraction, never inner.
    const Algebra c1({1});
    const Representation one = multiplicity_rep(c1, {1});
    const CharacteristicData half =
        characteristic_data_from_coefficients(free_correspondence(1), one, one, {Mat::Constant(1, 1, 0.5)}, 8);
    const PredicateReport ih = is_inner(half);
    o.detail << " 0.5-symbol inner=" << to_string(ih.verdict);
    o.require(ih.verdict == Verdict::False, "constant 0.5 is not inner");
    const ModelRep m = model_rep(model_spaces(half));
    const ClassificationReport cm = classify(m.rep, 8);
    o.detail << " its model C0=" << to_string(cm.is_C0);
    o.require(cm.is_C0 != Verdict::True, "model of a non-inner symbol is not reported C0");
    return o;
}

Outcome canonical_model() {
    Outcome o;
    for (const auto& [name, level] : std::vector<std::pair<std::string, int>>{{"A", 60}, {"B", 6}, {"C", 6}}) {
        const CanonicalEquivalence ce = canonical_equivalence(IsometricDilation(catalog_rep(name), level));
        const double worst = std::max({ce.unitarity, ce.intertwining_v, ce.intertwining_rho});
        const double tol = name == "B" ? 1e-12 : 1e-8;
        o.detail << " " << name << "(N=" << level << ") unitary/intertwining=" << worst << " model op=" << ce.model_operator
                 << " sv=" << ce.singular_values;
        o.require(worst <= tol, name + " Phi residuals");
        o.require(ce.singular_values <= 1e-8, name + " singular values");
    }
    return o;
}

Outcome round_trip() {
    Outcome o;
    for (const auto& [name, level] : std::vector<std::pair<std::string, int>>{{"A", 40}, {"B", 6}}) {
        const CharacteristicData cd = characteristic_operator(IsometricDilation(catalog_rep(name), level));
        const Witnesses w = construct_witnesses(cd);
        const IsomorphismReport r = verify_isomorphism(cd, w.model_data, w.W1, w.W2);
        o.detail << " " << name << "(N=" << level << ")=" << r.residual;
        o.require(r.isomorphic && r.residual <= 1e-8, name + " residual");
    }
    return o;
}

Outcome invariant_subspaces() {
    Outcome o;
    const CharacteristicData cd = characteristic_operator(IsometricDilation(catalog_rep("B"), 6));
    const ModelRep model = model_rep(model_spaces(cd));
    const Mat& h = model.spaces.H;
    const Mat line = h * range_basis(h.adjoint() * model.V(Vec::Ones(1)) * h, 1e-10);
    for (const Mat& m : {Mat(h.rows(), 0), line, h}) {
        const Factorization f = factor_from_subspace(model, m);
        const SubspaceResult back = subspace_from_factorization(model, f.theta1, f.theta2);
        const Factorization f2 = factor_from_subspace(model, back.M);
        const double dist = subspace_distance(m, back.M), eq = factor_equivalence(f, f2);
        o.detail << " dim " << m.cols() << ": dist=" << dist << " equiv=" << eq;
        o.require(dist <= 1e-8 && eq <= 1e-8, "subspace of dim " + std::to_string(m.cols()));
    }
    return o;
}

Outcome commutant_lifting() {
    Outcome o;
    const CovariantRep b = catalog_rep("B");
    const LiftResult lt = lift_commutant(b, b.Ttilde, 6);
    o.detail << " X=t: |Xi|=" << lt.norm_xi << " compression=" << lt.compression;
    o.require(std::abs(lt.norm_xi - 1.0) <= 1e-8, "norm of Xi");
    o.require(lt.compression <= 1e-10, "compression");
    for (const cplx c : {cplx(0), cplx(1), cplx(0, 2)}) {
        const LiftResult l = lift_commutant(b, c * identity(2), 6);
        const double err = std::max({l.constraint, l.compression, std::abs(l.norm_xi - std::abs(c))});
        o.detail << " X=" << c.real() << (c.imag() != 0 ? "+" + std::to_string(c.imag()) + "i" : "") << ": " << err;
        o.require(err <= 1e-12, "scalar lift");
    }
    return o;
}

Outcome duality() {
    Outcome o;
    const Algebra c1({1});
    int mismatches = 0;
    for (int n = 1; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m)
            if (dual(free_correspondence(n), multiplicity_rep(c1, {m})).dim() != n * m * m) ++mismatches;
    const FixtureFile e = load_catalog_fixture("E");
    const DualCorrespondence de = dual(e.E, e.sigma);
    o.detail << " free dims mismatches=" << mismatches << " swap dual dim=" << de.dim();
    o.require(mismatches == 0, "dim of the dual of C^n over C^m");
    o.require(de.dim() == 2, "swap dual dim");

    double unit = 0.0;
    for (const auto& [corr, sigma] : std::vector<std::pair<Correspondence, Representation>>{
             {free_correspondence(2), multiplicity_rep(c1, {2})}, {e.E, e.sigma}})
        unit = std::max(unit, FourierTransform(dual(corr, sigma), 3).unitarity_residual());
    o.detail << " U unitarity=" << unit;
    o.require(unit <= 1e-10, "U unitarity");

    for (const char* name : {"A", "E"}) {
        const CovariantRep rep = catalog_rep(name);
        o.detail << " " << name << " commutant/symbol:";
        for (int level = 1; level <= 4; ++level) {
            const FockTower tower(rep.E, rep.sigma, level);
            const int oracle = oracle_commutant(induced_generators(tower)).dim;
            const int symbols = symbol_space_dim(tower);
            o.detail << " " << oracle << "/" << symbols;
            o.require(oracle == symbols, std::string(name) + " N=" + std::to_string(level));
        }
    }
    return o;
}

Outcome predicates() {
    Outcome o;
    for (const char* name : {"A", "B", "C"}) {
        const FixtureFile f = load_catalog_fixture(name);
        const CharacteristicData cd = characteristic_operator(IsometricDilation(f.rep(), f.options.fock_level));
        const Verdict pure = is_pure(cd).verdict, pred = is_predictable(cd).verdict;
        o.detail << " " << name << " pure=" << to_string(pure) << " predictable=" << to_string(pred);
        o.require(pure == Verdict::True && pred == Verdict::True, name);
    }
    const Algebra c1({1});
    const Representation one = multiplicity_rep(c1, {1});
    const CharacteristicData unitary =
        characteristic_data_from_coefficients(free_correspondence(1), one, one, {identity(1)}, 6);
    const CharacteristicData zero =
        characteristic_data_from_coefficients(free_correspondence(1), one, one, {Mat::Zero(1, 1)}, 6);
    const Verdict up = is_pure(unitary).verdict, zp = is_predictable(zero).verdict;
    o.detail << " unitary-constant pure=" << to_string(up) << " zero predictable=" << to_string(zp);
    o.require(up == Verdict::False, "constant unitary is not pure");
    o.require(zp == Verdict::False, "zero symbol is not predictable");
    return o;
}

Outcome classification() {
    Outcome o;
    for (const auto& name : catalog_names()) {
        const FixtureFile f = load_catalog_fixture(name);
        const ClassificationReport c = classify(f.rep(), f.options.fock_level);
        o.detail << " " << name << ":" << to_string(c.is_C0) << "/" << to_string(c.is_cnc);
        o.require(c.is_C0 != Verdict::True || c.is_cnc == Verdict::True, name + " C0 but not c.n.c.");
    }
    const CovariantRep g = catalog_rep("G");
    const CncDecomposition d = cnc_decomposition(g, classify(g, 6));
    const MixedBlocks blocks = mixed_blocks();
    const double d1 = subspace_distance(d.H1, blocks.jordan), d2 = subspace_distance(d.H2, blocks.unitary);
    o.detail << " G blocks: " << d1 << " " << d2;
    o.require(d1 <= 1e-8 && d2 <= 1e-8, "G decomposition");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"dilation isometry", dilation_isometry},
        {"classical cross-check", classical_cross_check},
        {"two-path evaluation", two_path_evaluation},
        {"inner iff C0", inner_vs_c0},
        {"canonical model", canonical_model},
        {"round trip of characteristic data", round_trip},
        {"invariant subspaces", invariant_subspaces},
        {"commutant lifting", commutant_lifting},
        {"duality", duality},
        {"pure and predictable", predicates},
        {"classification", classification},
    };
    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " [exception: " << e.what() << "]";
        }
        if (!o.pass) ++failed;
        std::printf("%s %2zu %s:%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
