#include "cli.hpp"
#include "opmodel/fixtures.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace opm {
namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string path(const std::string& file) { return fixture_path(file); }

TEST(Fixtures, CatalogFilesMatchTheirConstruction) {
    for (const auto& name : catalog_names()) {
        const FixtureFile built = catalog_fixture(name), loaded = load_catalog_fixture(name);
        EXPECT_EQ(fixture_to_json(built).dump(), fixture_to_json(loaded).dump()) << name;
        EXPECT_LT(residual(built.rep().Ttilde, loaded.rep().Ttilde), 1e-15) << name;
    }
}

TEST(Fixtures, JsonRoundTripIsExact) {
    for (const auto& name : catalog_names()) {
        const Json j = fixture_to_json(load_catalog_fixture(name));
        EXPECT_EQ(fixture_to_json(parse_fixture(j.dump())).dump(), j.dump()) << name;
    }
}

TEST(Fixtures, ParseErrorsCarryALocation) {
    try {
        load_fixture(path("invalid/malformed.json"));
        FAIL() << "parsed malformed JSON";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
    }
}

TEST(Fixtures, SchemaErrorsNameTheKey) {
    try {
        parse_fixture(R"({"algebra": {"blocks": [1]}, "correspondence": {"kind": "free"}, "sigma": {"mult": [1]}})");
        FAIL() << "accepted a free correspondence without n";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Parse);
        EXPECT_NE(std::string(e.what()).find("\"n\""), std::string::npos);
    }
}

TEST(Fixtures, ComplexEntriesAndDigest) {
    EXPECT_EQ(complex_from_json(Json::parse("[1.5, -2]"), "x"), cplx(1.5, -2.0));
    EXPECT_EQ(complex_from_json(Json::parse("3"), "x"), cplx(3.0, 0.0));
    EXPECT_THROW(matrix_from_json(Json::parse("[[1, 2], [3]]"), "m"), Error);
    EXPECT_EQ(digest(""), "cbf29ce484222325");
    EXPECT_NE(digest("a"), digest("b"));
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"validate", path("jordan.json")}).code, cli::kOk);
    EXPECT_EQ(run({"validate", path("invalid/negative_inner.json")}).code, cli::kInvalid);
    EXPECT_EQ(run({"validate", path("invalid/malformed.json")}).code, cli::kParse);
    EXPECT_EQ(run({"validate", path("missing.json")}).code, cli::kParse);
    EXPECT_EQ(run({"crossed", path("jordan.json")}).code, cli::kInvalid);
    EXPECT_EQ(run({"charfun", path("scalar05.json"), "--eval", "1.5"}).code, cli::kInvalid);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kParse);
}

TEST(Cli, UnitaryIsNotCnc) {
    const CliRun r = run({"--json", "classify", path("unitary.json")});
    ASSERT_EQ(r.code, cli::kOk);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["verdicts"]["cnc"], "false");
    EXPECT_EQ(j["decomposition"]["unitary_dim"], 2);
}

TEST(Cli, UndecidedPredicatesExitWithFour) {
    // at level 3 the inner defect of the scalar contraction is inside its tail
    const CliRun r = run({"--fock-level", "3", "charfun", path("scalar05.json")});
    EXPECT_EQ(r.code, cli::kUndecided);
    EXPECT_EQ(run({"charfun", path("scalar05.json")}).code, cli::kOk);
}

TEST(Cli, ReportsAreByteDeterministic) {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"--json", "dilate", path("mixed.json")},
          {"--json", "charfun", path("jordan.json"), "--eval", "0.3:0.4"},
          {"--json", "--seed", "7", "validate", path("graph_loop.json")},
          {"model", path("jordan.json")}}) {
        const CliRun a = run(args), b = run(args);
        EXPECT_EQ(a.code, b.code);
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Cli, JsonReportHeader) {
    const CliRun r = run({"--json", "--tol", "1e-9", "dilate", path("jordan.json")});
    ASSERT_EQ(r.code, cli::kOk);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["command"], "dilate");
    EXPECT_EQ(j["input"]["digest"].get<std::string>().size(), 16u);
    EXPECT_EQ(j["options"]["tol"], 1e-9);
    for (const auto& c : j["checks"]) {
        EXPECT_TRUE(c.contains("tol"));
        EXPECT_TRUE(c.contains("frontier"));
        EXPECT_TRUE(c["pass"].get<bool>());
    }
    EXPECT_EQ(j["P_inf"]["verdict"], "exact-zero");
}

TEST(Cli, PointEvaluationsAgree) {
    const CliRun r = run({"--json", "charfun", path("jordan.json"), "--eval", "0.5", "--eval", "0.1:-0.7"});
    ASSERT_EQ(r.code, cli::kOk);
    for (const auto& e : Json::parse(r.out)["evaluations"]) EXPECT_LT(e["deviation"].get<double>(), 1e-12);
}

TEST(Cli, ExplicitWitnesses) {
    const CliRun r = run({"--json", "verify", path("jordan.json"), "--against", path("jordan.json"), "--w1", "[[1]]",
                       "--w2", "[[1]]"});
    ASSERT_EQ(r.code, cli::kOk);
    EXPECT_TRUE(Json::parse(r.out)["report"]["isomorphic"].get<bool>());
}

TEST(Cli, FactorAndLift) {
    for (const char* sub : {"zero", "range", "full"}) EXPECT_EQ(run({"factor", path("jordan.json"), "--subspace", sub}).code, cli::kOk) << sub;
    EXPECT_EQ(run({"lift", path("jordan.json"), "--x", "[[0, 1], [0, 0]]"}).code, cli::kOk);
    EXPECT_EQ(run({"lift", path("jordan.json"), "--x", "[[0, 0], [1, 0]]"}).code, cli::kInvalid);
    EXPECT_EQ(run({"lift", path("mixed.json")}).code, cli::kInvalid);
}

TEST(Cli, CrossedBridge) {
    const CliRun r = run({"--json", "--fock-level", "10", "crossed", path("crossed_swap.json"), "--sznf-check", "--grid", "0.8,3", "--bilateral"});
    ASSERT_EQ(r.code, cli::kOk);
    const Json j = Json::parse(r.out);
    EXPECT_EQ(j["symbol_dims"]["toeplitz"], j["symbol_dims"]["dual"]);
    EXPECT_LE(j["sznf"]["max_deviation"].get<double>(), j["sznf"]["tail_bound"].get<double>());
    EXPECT_EQ(j["sznf"]["points"].size(), 9u);
}

}  // namespace
}  // namespace opm
