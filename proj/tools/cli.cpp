#include "cli.hpp"

#include "opmodel/io.hpp"
#include "opmodel/model.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

namespace opm::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Global {
    std::string file;
    int level = -1;  // -1: take the fixture's own level
    double tol = -1.0;
    bool json = false;
    bool timings = false;
    unsigned long long seed = 0;
};

struct Context {
    FixtureFile fixture;
    std::string path;
    std::string bytes;
    int level = 6;
    double tol = 1e-10;
};

int exit_code(ErrorKind k) {
    switch (k) {
        case ErrorKind::Parse: return kParse;
        case ErrorKind::Undecided: return kUndecided;
        case ErrorKind::Validation:
        case ErrorKind::Precondition:
        case ErrorKind::Structural:
        case ErrorKind::Domain: return kInvalid;
        default: return kFailure;
    }
}

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Structural: return "structural";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Precondition: return "precondition";
        case ErrorKind::Numerical: return "numerical";
        case ErrorKind::Undecided: return "undecided";
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Resource: return "resource";
        default: return "parse";
    }
}

Context load(const Global& g) {
    Context c;
    c.path = g.file;
    std::ifstream in(g.file, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, g.file + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    c.bytes = ss.str();
    c.fixture = parse_fixture(c.bytes, g.file);
    c.level = g.level >= 0 ? g.level : c.fixture.options.fock_level;
    c.tol = g.tol > 0 ? g.tol : c.fixture.options.tol;
    if (c.level < 1) throw Error(ErrorKind::Validation, "--fock-level must be at least 1");
    return c;
}

Json header(const std::string& command, const Context& c, const Global& g) {
    Json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["input"] = Json{{"file", c.path}, {"name", c.fixture.name}, {"digest", digest(c.bytes)}};
    j["options"] = Json{{"fock_level", c.level}, {"tol", c.tol}, {"seed", g.seed}};
    return j;
}

Json check(const std::string& name, double value, double tol, int frontier) {
    Json j{{"name", name}, {"value", value}, {"tol", tol}};
    j["frontier"] = frontier >= 0 ? Json(frontier) : Json("all");
    j["pass"] = value <= tol;
    return j;
}

Json predicate(const PredicateReport& p, double tol) {
    return Json{{"verdict", to_string(p.verdict)}, {"residual", p.residual}, {"tail_estimate", p.tail_estimate},
                {"tol", tol},  {"frontier", p.frontier}, {"note", p.note}};
}

bool any_undecided(const Json& j) {
    if (j.is_string()) return j.get<std::string>() == "undecided";
    if (j.is_object() || j.is_array())
        for (const auto& v : j) {
            if (any_undecided(v)) return true;
        }
    return false;
}

// "0.5", "0.5:0.25" (re:im)
cplx parse_scalar(const std::string& s) {
    const auto colon = s.find(':');
    try {
        size_t used = 0;
        if (colon == std::string::npos) {
            const double re = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument(s);
            return {re, 0.0};
        }
        const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
        const double re = std::stod(a, &used);
        if (used != a.size()) throw std::invalid_argument(s);
        const double im = std::stod(b, &used);
        if (used != b.size()) throw std::invalid_argument(s);
        return {re, im};
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "cannot read \"" + s + "\" as a number (use re or re:im)");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

// Direction used when a point is given as a single scalar z: the identity of M
// for endomorphism correspondences, the first coordinate vector otherwise.
Vec reference_direction(const FixtureFile& f) {
    const std::string kind = f.correspondence.value("kind", "");
    if (kind == "endomorphism" || kind == "identity") return coordinates(f.algebra, unit_element(f.algebra));
    return Vec::Unit(f.E.dim, 0);
}

Vec parse_point(const std::string& s, const FixtureFile& f) {
    const auto parts = split(s, ',');
    if (parts.size() == 1) return parse_scalar(parts[0]) * reference_direction(f);
    if (static_cast<int>(parts.size()) != f.E.dim)
        throw Error(ErrorKind::Parse, "point \"" + s + "\" needs 1 or " + std::to_string(f.E.dim) + " entries");
    Vec v(f.E.dim);
    for (int i = 0; i < f.E.dim; ++i) v(i) = parse_scalar(parts[i]);
    return v;
}

std::pair<double, int> parse_grid(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw Error(ErrorKind::Parse, "grid must be r,steps");
    const double r = parse_scalar(parts[0]).real();
    int steps = 0;
    try {
        steps = std::stoi(parts[1]);
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Parse, "grid steps must be an integer");
    }
    if (steps < 1) throw Error(ErrorKind::Parse, "grid steps must be positive");
    return {r, steps};
}

Mat parse_matrix_arg(const std::string& s, const std::string& name) {
    Json j;
    try {
        j = Json::parse(s);
    } catch (const Json::parse_error&) {
        throw Error(ErrorKind::Parse, name + ": malformed JSON matrix");
    }
    return matrix_from_json(j, name);
}

// ---------------------------------------------------------------- commands

Json cmd_validate(const Context& c, const Global& g) {
    Json j = header("validate", c, g);
    const ValidationReport vr = validate(c.fixture.E, c.tol);
    Json axioms = Json::array();
    for (const auto& a : vr.axioms) axioms.push_back(check(a.axiom, a.residual, c.tol, -1));
    j["correspondence"] = axioms;
    if (!vr.passed()) {
        j["valid"] = false;
        j["failure"] = vr.first_failure();
        return j;
    }
    const CovariantRep rep = c.fixture.rep(c.tol);
    Json reps = Json::array();
    reps.push_back(check("covariance", covariance_residual(rep), c.tol, -1));
    reps.push_back(check("contraction excess", std::max(0.0, opnorm(rep.Ttilde) - 1.0), c.tol, -1));
    if (c.fixture.crossed) reps.push_back(check("t intertwining", crossed_intertwining_residual(*c.fixture.crossed), c.tol, -1));

    // Randomized creation relations on the truncated Fock space; the seed only
    // picks the test vectors.
    std::mt19937_64 rng(g.seed);
    std::normal_distribution<double> normal;
    const TruncatedFock fock(c.fixture.E, std::min(c.level, 3));
    double worst = 0.0;
    for (int trial = 0; trial < 4; ++trial) {
        Vec xi(c.fixture.E.dim), eta(c.fixture.E.dim);
        for (int i = 0; i < c.fixture.E.dim; ++i) {
            xi(i) = cplx(normal(rng), normal(rng));
            eta(i) = cplx(normal(rng), normal(rng));
        }
        worst = std::max(worst, fock.creation_relation_residual(xi, eta));
    }
    reps.push_back(check("creation relations (random vectors)", worst, 1e-8, fock.level() - 1));
    j["representation"] = reps;
    j["valid"] = std::all_of(reps.begin(), reps.end(), [](const Json& r) { return r["pass"].get<bool>(); });
    return j;
}

Json cmd_classify(const Context& c, const Global& g) {
    Json j = header("classify", c, g);
    const CovariantRep rep = c.fixture.rep(c.tol);
    const ClassificationReport cls = classify(rep, c.level, c.tol);
    j["verdicts"] = Json{{"C0", to_string(cls.is_C0)}, {"cnc", to_string(cls.is_cnc)}};
    j["norm"] = cls.norm;
    j["decay"] = Json{{"value", cls.decay}, {"tol", c.tol}, {"frontier", cls.level}, {"note", cls.c0_reason}};
    j["coisometric_candidate_dims"] = cls.h2_dims;
    j["stabilized"] = cls.stabilized;
    if (cls.is_cnc == Verdict::False) {
        const CncDecomposition d = cnc_decomposition(rep, cls);
        j["decomposition"] = Json{{"cnc_dim", d.H1.cols()},
                                  {"unitary_dim", d.H2.cols()},
                                  {"checks", Json::array({check("upper right block", d.upper_right, c.tol, -1),
                                                          check("reconstruction", d.reconstruction, c.tol, -1)})}};
    }
    return j;
}

Json cmd_dilate(const Context& c, const Global& g) {
    Json j = header("dilate", c, g);
    const CovariantRep rep = c.fixture.rep(c.tol);
    const IsometricDilation dil(rep, c.level);
    const TruncationLedger led = dil.ledger();
    j["dims"] = Json{{"H", rep.h_dim()}, {"K", dil.k_dim()}, {"D", dil.defect().D.cols()}, {"D_star", dil.defect().Dstar.cols()}};
    j["checks"] = Json::array({check("isometry", dil.isometry_residual(), c.tol, c.level - 1),
                               check("compression to T", dil.dilation_residual(), c.tol, -1),
                               check("covariance", dil.covariance_residual(), c.tol, -1)});
    const ProjectionChain chain = projection_chain(dil, c.tol);
    j["P_inf"] = Json{{"verdict", to_string(chain.verdict)},
                      {"tail", chain.pinf_tail},
                      {"orthogonality", chain.orthogonality}};
    j["ledger"] = Json{{"level", led.level}, {"frontier", led.frontier}, {"tail_bound", led.tail_bound}};
    if (chain.verdict == PinfVerdict::Undecided) j["verdicts"] = Json{{"P_inf", "undecided"}};
    return j;
}

Json evaluation_json(const PointEvaluation& p) {
    return Json{{"method", to_string(p.method)}, {"r", p.r}, {"tail_bound", p.tail_bound}, {"value", to_json(p.value)}};
}

Json cmd_charfun(const Context& c, const Global& g, const std::vector<std::string>& evals, const std::string& grid) {
    Json j = header("charfun", c, g);
    const CovariantRep rep = c.fixture.rep(c.tol);
    const IsometricDilation dil(rep, c.level);
    const CharacteristicData cd = characteristic_operator(dil, c.tol);
    const CommutationReport ir = intertwining_residual(cd);
    j["ledger"] = Json{{"level", cd.ledger.level}, {"frontier", cd.ledger.frontier}, {"tail_bound", cd.ledger.tail_bound}};
    j["checks"] = Json::array({check("intertwines creation", ir.creation, 1e-8, c.level - 1),
                               check("intertwines phi_inf", ir.diagonal, 1e-8, -1),
                               check("contraction excess", contraction_excess(cd), 1e-8, -1),
                               check("grade 0 = -D_*^* T~ D", grade0_residual(cd), 1e-8, 0)});
    Json coeffs = Json::array();
    for (int k = 0; k <= c.level; ++k) coeffs.push_back(to_json(taylor_coefficient(cd, k)));
    j["taylor_coefficients"] = coeffs;
    j["predicates"] = Json{{"inner", predicate(is_inner(cd, c.tol), c.tol)},
                           {"pure", predicate(is_pure(cd), c.tol)},
                           {"predictable", predicate(is_predictable(cd), 1e-8)}};

    if (evals.empty() && grid.empty()) return j;
    const CharFunction cf = to_function(cd);
    j["corner_residual"] = cf.corner_residual;
    const DefectData& def = dil.defect();
    Json points = Json::array();
    for (const auto& s : evals) {
        const Vec xi = parse_point(s, c.fixture);
        const PointEvaluation series = evaluate_series(cf, xi);
        const PointEvaluation res = evaluate_resolvent(rep, def, xi);
        points.push_back(Json{{"xi", to_json(xi)},
                              {"series", evaluation_json(series)},
                              {"resolvent", evaluation_json(res)},
                              {"deviation", residual(series.value, res.value)}});
    }
    if (!evals.empty()) j["evaluations"] = points;
    if (!grid.empty()) {
        const auto [r, steps] = parse_grid(grid);
        const Vec dir = reference_direction(c.fixture);
        Json rows = Json::array();
        double worst = 0.0, worst_bound = 0.0;
        for (const cplx z : polar_grid(r, steps, steps)) {
            const PointEvaluation series = evaluate_series(cf, z * dir);
            const PointEvaluation res = evaluate_resolvent(rep, def, z * dir);
            const double dev = residual(series.value, res.value);
            const double bound = res.r < 1.0 ? geometric_tail(res.r, c.level) : -1.0;
            worst = std::max(worst, dev);
            worst_bound = std::max(worst_bound, bound);
            rows.push_back(Json{{"z", to_json(z)}, {"deviation", dev}, {"r", res.r}, {"bound", bound}});
        }
        j["grid"] = Json{{"radius", r}, {"steps", steps}, {"points", rows}, {"max_deviation", worst}, {"max_bound", worst_bound}};
    }
    return j;
}

Json cmd_model(const Context& c, const Global& g) {
    Json j = header("model", c, g);
    const CovariantRep rep = c.fixture.rep(c.tol);
    const IsometricDilation dil(rep, c.level);
    const CanonicalEquivalence ce = canonical_equivalence(dil, c.tol);
    const int frontier = predicate_frontier(ce.data);
    j["dims"] = Json{{"K_theta", ce.model.spaces.k_dim()}, {"H_theta", ce.model.spaces.H.cols()}};
    j["checks"] = Json::array({check("Phi unitary", ce.unitarity, 1e-8, -1),
                               check("Phi(H_theta) = H", ce.subspace, 1e-8, -1),
                               check("Phi intertwines V", ce.intertwining_v, 1e-8, frontier),
                               check("Phi intertwines rho", ce.intertwining_rho, 1e-8, -1),
                               check("model operator", ce.model_operator, 1e-8, -1),
                               check("singular values of T~", ce.singular_values, 1e-8, -1),
                               check("V_theta isometric", ce.model.isometry, 1e-8, frontier),
                               check("V_theta covariant", ce.model.covariance, 1e-8, -1)});
    Json verdicts;
    try {
        const MinimalityReport m = check_minimality(ce.model, 1e-8);
        verdicts["minimal"] = to_string(m.verdict);
        j["minimality"] = Json{{"missing", m.missing}, {"M0 distance", m.m0_distance}, {"frontier", m.frontier}};
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Precondition) throw;
        verdicts["minimal"] = "not applicable";
        j["minimality"] = Json{{"note", e.what()}};
    }
    j["verdicts"] = verdicts;
    return j;
}

Json isomorphism_json(const IsomorphismReport& r, double tol, int frontier) {
    return Json{{"isomorphic", r.isomorphic},
                {"checks", Json::array({check("Theta' = (I x W2) Theta (I x W1^*)", r.residual, tol, frontier),
                                        check("W unitary", r.w_unitarity, tol, -1),
                                        check("W intertwining", r.w_intertwining, tol, -1)})}};
}

Json cmd_verify(const Context& c, const Global& g, const std::string& against, const std::string& w1,
                const std::string& w2) {
    Json j = header("verify", c, g);
    const IsometricDilation dil(c.fixture.rep(c.tol), c.level);
    const CharacteristicData cd = characteristic_operator(dil, c.tol);
    if (against.empty()) {
        const Witnesses w = construct_witnesses(cd, 1e-8);
        j["mode"] = "round trip through the model";
        j["witnesses"] = Json{{"W1", to_json(w.W1)}, {"W2", to_json(w.W2)}, {"span_isometry", w.span_isometry}};
        try {
            const IsomorphismReport r = verify_isomorphism(cd, w.model_data, w.W1, w.W2, 1e-8);
            j["report"] = isomorphism_json(r, 1e-8, c.level - 1);
            j["verdicts"] = Json{{"isomorphic", r.isomorphic ? "true" : "false"}};
        } catch (const Error& e) {
            // The canonical witnesses are only as unitary as the truncation allows.
            if (e.kind() != ErrorKind::Precondition) throw;
            j["report"] = Json{{"note", e.what()}, {"tail_bound", cd.ledger.tail_bound}};
            j["verdicts"] = Json{{"isomorphic", "undecided"}};
        }
        return j;
    }
    if (w1.empty() || w2.empty()) throw Error(ErrorKind::Parse, "--against needs --w1 and --w2");
    Global g2 = g;
    g2.file = against;
    const Context other = load(g2);
    const IsometricDilation dil2(other.fixture.rep(other.tol), c.level);
    const CharacteristicData cd2 = characteristic_operator(dil2, c.tol);
    j["mode"] = "explicit witnesses";
    j["against"] = Json{{"file", other.path}, {"digest", digest(other.bytes)}};
    j["report"] = isomorphism_json(
        verify_isomorphism(cd, cd2, parse_matrix_arg(w1, "--w1"), parse_matrix_arg(w2, "--w2"), 1e-8), 1e-8,
        c.level - 1);
    return j;
}

Json cmd_factor(const Context& c, const Global& g, const std::string& subspace) {
    Json j = header("factor", c, g);
    const IsometricDilation dil(c.fixture.rep(c.tol), c.level);
    const CharacteristicData cd = characteristic_operator(dil, c.tol);
    const ModelRep model = model_rep(model_spaces(cd), 1e-8);
    const Mat& h = model.spaces.H;
    Mat msub;
    if (subspace == "zero") {
        msub = Mat(h.rows(), 0);
    } else if (subspace == "full") {
        msub = h;
    } else if (subspace == "range") {
        // closed span of T_theta(xi) H_theta, invariant under T_theta and sigma_theta
        std::vector<Mat> images;
        for (int p = 0; p < cd.E.dim; ++p) images.push_back(h.adjoint() * model.V(Vec::Unit(cd.E.dim, p)) * h);
        msub = h * range_basis(hstack(images, static_cast<int>(h.cols())), 1e-10);
    } else {
        const Mat coords = parse_matrix_arg(subspace, "--subspace");
        if (coords.rows() != h.cols()) throw Error(ErrorKind::Structural, "--subspace needs dim H_theta rows");
        msub = h * range_basis(coords, 1e-10);
    }
    const double inv = invariance_residual(model, msub);
    if (inv > 1e-8)
        throw Error(ErrorKind::Precondition, "subspace is not invariant (residual " + std::to_string(inv) + ")");
    const Factorization f = factor_from_subspace(model, msub, 1e-8);
    const SubspaceResult back = subspace_from_factorization(model, f.theta1, f.theta2, 1e-8);
    const int frontier = predicate_frontier(cd);
    j["dims"] = Json{{"H_theta", h.cols()}, {"M", msub.cols()}, {"H0", f.H0.cols()}};
    j["checks"] = Json::array({check("invariance", inv, 1e-8, -1),
                               check("Theta = Theta1 Theta2", f.product_residual, 1e-8, frontier),
                               check("decomposition", f.decomposition, 1e-8, frontier),
                               check("subspace round trip", subspace_distance(msub, back.M), 1e-8, frontier)});
    j["verdicts"] = Json{{"theta1 inner", to_string(f.inner1.verdict)}, {"theta2 inner", to_string(f.inner2.verdict)}};
    return j;
}

Json cmd_lift(const Context& c, const Global& g, const std::string& xarg) {
    Json j = header("lift", c, g);
    const CovariantRep rep = c.fixture.rep(c.tol);
    Mat x;
    if (!xarg.empty())
        x = parse_matrix_arg(xarg, "--x");
    else if (rep.E.dim == 1)
        x = rep.T(Vec::Unit(1, 0));
    else
        x = identity(rep.h_dim());
    const LiftResult l = lift_commutant(rep, x, c.level, 1e-8);
    j["X"] = to_json(x);
    j["norms"] = Json{{"X", l.norm_x}, {"Xi", l.norm_xi}, {"difference", std::abs(l.norm_x - l.norm_xi)}};
    j["checks"] = Json::array({check("Psi^* U0 = U0 X^*", l.constraint, 1e-8, -1),
                               check("U0^* Psi U0 = X", l.compression, 1e-8, -1),
                               check("U0 isometric", l.u0_isometry, 1e-8, -1)});
    Json coeffs = Json::array();
    for (const auto& m : l.coefficients) coeffs.push_back(to_json(m));
    j["coefficients"] = coeffs;
    return j;
}

Json cmd_crossed(const Context& c, const Global& g, bool sznf, const std::string& grid, bool bilateral) {
    Json j = header("crossed", c, g);
    if (!c.fixture.crossed) throw Error(ErrorKind::Precondition, "fixture is not a crossed-product fixture");
    const CrossedData& cr = *c.fixture.crossed;
    const Correspondence e = crossed_correspondence(cr);
    const FockTower tower(e, cr.sigma, c.level);
    const Ell2Identification w = ell2_identification(cr.alpha, tower);
    j["ell2"] = Json::array({check("W unitary", w.unitarity, 1e-12, -1),
                             check("weighted shift", w.shift, 1e-12, -1),
                             check("diagonal action", w.diagonal, 1e-12, -1)});
    j["symbol_dims"] = Json{{"toeplitz", toeplitz_symbol_dim(cr, c.level)}, {"dual", symbol_space_dim(tower)}};
    if (sznf) {
        const auto [r, steps] = grid.empty() ? std::pair<double, int>{0.9, 5} : parse_grid(grid);
        const SzNFComparison s = sznf_compare(cr, polar_grid(r, steps, steps), c.level, c.tol);
        Json rows = Json::array();
        for (const auto& p : s.points) rows.push_back(Json{{"z", to_json(p.z)}, {"deviation", p.deviation}});
        j["sznf"] = Json{{"points", rows},
                         {"max_deviation", s.max_deviation},
                         {"r", s.r},
                         {"tail_bound", s.tail_bound},
                         {"taylor", s.taylor}};
    }
    if (bilateral) {
        const BilateralReport b = bilateral_extension_check(cr, c.level, c.tol);
        j["bilateral"] = Json{{"frontier", b.frontier},     {"toeplitz", b.toeplitz},
                              {"norm_identity", b.norm_identity}, {"root_shift", b.root_shift},
                              {"window_excess", b.window_excess}, {"tail_bound", b.tail_bound}};
    }
    return j;
}

// ---------------------------------------------------------------- output

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void render(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        if (j.contains("name") && j.contains("value")) {
            out << prefix << j["name"].get<std::string>() << ": " << scalar_text(j["value"]);
            if (j.contains("tol")) out << "  (tol " << scalar_text(j["tol"]) << ", frontier " << scalar_text(j["frontier"]) << ")";
            if (j.contains("pass")) out << (j["pass"].get<bool>() ? "  ok" : "  FAIL");
            out << "\n";
            return;
        }
        for (const auto& [k, v] : j.items()) {
            if (v.is_object() || (v.is_array() && !v.empty() && v[0].is_object())) {
                out << prefix << k << ":\n";
                render(v, prefix + "  ", out);
            } else {
                out << prefix << k << ": " << scalar_text(v) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto& v : j) render(v, prefix, out);
    } else {
        out << prefix << scalar_text(j) << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Operator-model toolkit for covariant representations of W*-correspondences", "opmodel"};
    app.require_subcommand(1);
    Global g;
    app.add_option("--fock-level", g.level, "Fock truncation level N (default: the fixture's)");
    app.add_option("--tol", g.tol, "residual tolerance (default: the fixture's)");
    app.add_flag("--json", g.json, "machine-readable report");
    app.add_flag("--timings", g.timings, "add wall-clock timings (reports are then not reproducible)");
    app.add_option("--seed", g.seed, "seed for randomized test vectors");

    std::vector<std::string> evals;
    std::string grid, against, w1, w2, subspace = "full", xarg;
    bool sznf = false, bilateral = false;
    std::string command;

    auto add = [&](const char* name, const char* help) {
        CLI::App* s = app.add_subcommand(name, help);
        s->fallthrough();
        s->add_option("file", g.file, "fixture file")->required();
        s->callback([&command, name] { command = name; });
        return s;
    };
    add("validate", "check the correspondence axioms and the covariant representation");
    add("classify", "C.0 and c.n.c. verdicts");
    add("dilate", "minimal isometric dilation residuals");
    CLI::App* cf = add("charfun", "characteristic operator, predicates and point evaluations");
    cf->add_option("--eval", evals, "point xi as z or x1,x2,... (entries re or re:im)");
    cf->add_option("--eval-grid", grid, "polar grid r,steps along the reference direction");
    add("model", "canonical model and its equivalence with the dilation");
    CLI::App* vf = add("verify", "isomorphism of characteristic data");
    vf->add_option("--against", against, "second fixture");
    vf->add_option("--w1", w1, "W1 as a JSON matrix");
    vf->add_option("--w2", w2, "W2 as a JSON matrix");
    CLI::App* fa = add("factor", "factorization from an invariant subspace of the model");
    fa->add_option("--subspace", subspace, "zero | full | range | JSON matrix in H_theta coordinates");
    CLI::App* li = add("lift", "commutant lifting");
    li->add_option("--x", xarg, "X as a JSON matrix (default T(e_0) when dim E = 1)");
    CLI::App* cr = add("crossed", "crossed-product bridge to the classical model");
    cr->add_flag("--sznf-check", sznf, "compare with the classical characteristic function");
    cr->add_option("--grid", grid, "polar grid r,steps");
    cr->add_flag("--bilateral", bilateral, "bilateral extension check");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << "\n";
        return kParse;
    }

    const auto t0 = std::chrono::steady_clock::now();
    Json report;
    try {
        const Context c = load(g);
        if (command == "validate") report = cmd_validate(c, g);
        else if (command == "classify") report = cmd_classify(c, g);
        else if (command == "dilate") report = cmd_dilate(c, g);
        else if (command == "charfun") report = cmd_charfun(c, g, evals, grid);
        else if (command == "model") report = cmd_model(c, g);
        else if (command == "verify") report = cmd_verify(c, g, against, w1, w2);
        else if (command == "factor") report = cmd_factor(c, g, subspace);
        else if (command == "lift") report = cmd_lift(c, g, xarg);
        else report = cmd_crossed(c, g, sznf, grid, bilateral);
    } catch (const Error& e) {
        err << command << ": " << kind_name(e.kind()) << " error: " << e.what() << "\n";
        if (g.json) {
            Json j{{"command", command}, {"version", kVersion}, {"error", Json{{"kind", kind_name(e.kind())}, {"message", e.what()}}}};
            out << j.dump(2) << "\n";
        }
        return exit_code(e.kind());
    }
    if (g.timings)
        report["timings"] = Json{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};

    if (g.json)
        out << report.dump(2) << "\n";
    else
        render(report, "", out);

    if (command == "validate" && !report.value("valid", false)) return kInvalid;
    return any_undecided(report.contains("verdicts") ? report["verdicts"] : Json()) ||
                   (report.contains("predicates") && any_undecided(report["predicates"]))
               ? kUndecided
               : kOk;
}

}  // namespace opm::cli
