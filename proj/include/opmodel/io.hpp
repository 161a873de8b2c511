#pragma once

#include "opmodel/crossed.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace opm {

using Json = nlohmann::ordered_json;

// Complex entries are [re, im] pairs (a bare number is read as real); matrices
// are arrays of rows.
Json to_json(cplx z);
Json to_json(const Mat& m);
Json to_json(const Vec& v);
Mat matrix_from_json(const Json& j, const std::string& where);
cplx complex_from_json(const Json& j, const std::string& where);

inline constexpr int kFixtureSchema = 1;

struct FixtureOptions {
    int fock_level = 6;
    double tol = 1e-10;
};

// A fixture file in memory.  Exactly one of ttilde / crossed describes the
// covariant representation.
struct FixtureFile {
    std::string name;
    std::string description;
    Algebra algebra;
    Json correspondence;  // kept verbatim so files round-trip
    Correspondence E;
    Representation sigma;
    std::optional<Mat> ttilde;
    std::optional<CrossedData> crossed;
    FixtureOptions options;

    CovariantRep rep(double tol = 1e-10) const;
};

// Parse errors (syntax or schema) throw ErrorKind::Parse with a location;
// structural problems of the decoded data throw the module's own error.
FixtureFile parse_fixture(const std::string& text, const std::string& source = "<input>");
FixtureFile load_fixture(const std::string& path);
Json fixture_to_json(const FixtureFile& f);

Correspondence correspondence_from_json(const Algebra& alg, const Json& j);
Representation representation_from_json(const Algebra& alg, const Json& j);
Json representation_to_json(const Representation& r);

// 64-bit FNV-1a of the bytes, as 16 hex digits; used as the input digest.
std::string digest(const std::string& bytes);

}  // namespace opm
