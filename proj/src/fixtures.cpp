#include "opmodel/fixtures.hpp"

#include "opmodel/duality.hpp"

namespace opm {

namespace {

Mat m11(double x) { return Mat::Constant(1, 1, x); }

Mat jordan() {
    Mat t = Mat::Zero(2, 2);
    t(0, 1) = 1.0;
    return t;
}

Mat flip() {
    Mat u = Mat::Zero(2, 2);
    u(0, 1) = u(1, 0) = 1.0;
    return u;
}

FixtureFile free_fixture(const std::string& name, const std::string& text, int n, int mult, const Mat& ttilde) {
    FixtureFile f;
    f.name = name;
    f.description = text;
    f.algebra = Algebra({1});
    f.correspondence = Json{{"kind", "free"}, {"n", n}};
    f.E = free_correspondence(n);
    f.sigma = multiplicity_rep(f.algebra, {mult});
    f.ttilde = ttilde;
    return f;
}

FixtureFile graph_fixture() {
    FixtureFile f;
    f.name = "D";
    f.description = "graph with an edge 0 -> 1 and a loop at 0; weights 0.5 on the edge, 0.4 on the loop";
    f.algebra = Algebra({1, 1});
    f.correspondence = Json{{"kind", "graph"}, {"vertices", 2}, {"edges", Json::array({{0, 1}, {0, 0}})}};
    f.E = from_graph(2, {{0, 1}, {0, 0}});
    f.sigma = multiplicity_rep(f.algebra, {1, 1});
    // The intertwiners E (x) H -> H split by vertex: basis[0] carries the loop
    // into vertex 0, basis[1] the edge into vertex 1.
    const std::vector<Mat> basis = intertwiner_basis(f.sigma, localize(f.E, f.sigma).rep);
    f.ttilde = 0.4 * basis[0] + 0.5 * basis[1];
    return f;
}

FixtureFile crossed_fixture() {
    FixtureFile f;
    f.name = "E";
    f.description = "swap endomorphism of C^2, sigma = C^2, t = [[0, 0.5], [0.3, 0]]";
    f.algebra = Algebra({1, 1});
    Mat alpha = Mat::Zero(2, 2);
    alpha(0, 1) = alpha(1, 0) = 1.0;
    f.correspondence = Json{{"kind", "endomorphism"}, {"alpha", to_json(alpha)}};
    f.E = from_endomorphism(f.algebra, alpha);
    f.sigma = multiplicity_rep(f.algebra, {1, 1});
    Mat t = Mat::Zero(2, 2);
    t(0, 1) = 0.5;
    t(1, 0) = 0.3;
    f.crossed = make_crossed(f.algebra, alpha, f.sigma, t);
    return f;
}

}  // namespace

std::vector<std::string> catalog_names() { return {"A", "B", "C", "D", "E", "F", "G"}; }

FixtureFile catalog_fixture(const std::string& name) {
    // The strict contractions converge geometrically; level 30 makes the
    // inner and round-trip checks decidable on their own.
    if (name == "A") {
        FixtureFile f = free_fixture("A", "scalar contraction t = 0.5", 1, 1, m11(0.5));
        f.options.fock_level = 30;
        return f;
    }
    if (name == "B") return free_fixture("B", "2x2 Jordan cell", 1, 2, jordan());
    if (name == "C") {
        Mat t(1, 2);
        t << 0.6, 0.3;
        FixtureFile f = free_fixture("C", "row contraction [0.6, 0.3] over C^2", 2, 1, t);
        f.options.fock_level = 5;
        return f;
    }
    if (name == "D" || name == "E") {
        FixtureFile f = name == "D" ? graph_fixture() : crossed_fixture();
        f.options.fock_level = 30;
        return f;
    }
    if (name == "F") return free_fixture("F", "unitary flip on C^2", 1, 2, flip());
    if (name == "G") return free_fixture("G", "Jordan cell plus the unitary flip", 1, 4, block_diag({jordan(), flip()}));
    throw Error(ErrorKind::Structural, "no catalog fixture named " + name);
}

std::string catalog_file(const std::string& name) {
    static const char* files[] = {"scalar05.json", "jordan.json", "row_contraction.json", "graph_loop.json",
                                  "crossed_swap.json", "unitary.json", "mixed.json"};
    const auto names = catalog_names();
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return files[i];
    throw Error(ErrorKind::Structural, "no catalog fixture named " + name);
}

std::string fixture_path(const std::string& file) { return std::string(OPMODEL_FIXTURE_DIR) + "/" + file; }

FixtureFile load_catalog_fixture(const std::string& name) { return load_fixture(fixture_path(catalog_file(name))); }

MixedBlocks mixed_blocks() {
    const Mat i4 = identity(4);
    return {i4.leftCols(2), i4.rightCols(2)};
}

}  // namespace opm
