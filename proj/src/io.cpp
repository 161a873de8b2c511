#include "opmodel/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace opm {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Parse, where + ": " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) schema_error(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema_error(where, std::string("missing key \"") + key + "\"");
    return *it;
}

int int_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) schema_error(where, "expected an integer");
    return j.get<int>();
}

std::vector<int> ints_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) schema_error(where, "expected an array of integers");
    std::vector<int> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(int_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::vector<Mat> matrices_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) schema_error(where, "expected an array of matrices");
    std::vector<Mat> out;
    for (size_t i = 0; i < j.size(); ++i) out.push_back(matrix_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

std::string location(const std::string& text, size_t byte) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

Json to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const Mat& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const Vec& v) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
    return out;
}

cplx complex_from_json(const Json& j, const std::string& where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    schema_error(where, "expected a number or an [re, im] pair");
}

Mat matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) schema_error(where, "expected an array of rows");
    const int rows = static_cast<int>(j.size());
    if (rows == 0) return Mat(0, 0);
    if (!j[0].is_array()) schema_error(where, "expected an array of rows");
    const int cols = static_cast<int>(j[0].size());
    Mat m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        const std::string rw = where + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != cols) schema_error(rw, "ragged matrix row");
        for (int c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c], rw + "[" + std::to_string(c) + "]");
    }
    return m;
}

Correspondence correspondence_from_json(const Algebra& alg, const Json& j) {
    const std::string where = "correspondence";
    const Json& kind = member(j, "kind", where);
    if (!kind.is_string()) schema_error(where + ".kind", "expected a string");
    const std::string k = kind.get<std::string>();
    if (k == "identity") return identity_correspondence(alg);
    if (k == "free") {
        if (alg != Algebra({1})) throw Error(ErrorKind::Structural, "free correspondence needs M = C");
        return free_correspondence(int_from_json(member(j, "n", where), where + ".n"));
    }
    if (k == "endomorphism") return from_endomorphism(alg, matrix_from_json(member(j, "alpha", where), where + ".alpha"));
    if (k == "graph") {
        const int v = int_from_json(member(j, "vertices", where), where + ".vertices");
        if (alg != Algebra(std::vector<int>(std::max(v, 0), 1)))
            throw Error(ErrorKind::Structural, "graph correspondence needs M = C^vertices");
        const Json& edges = member(j, "edges", where);
        if (!edges.is_array()) schema_error(where + ".edges", "expected an array of [source, range] pairs");
        std::vector<Edge> out;
        for (size_t i = 0; i < edges.size(); ++i) {
            const std::vector<int> e = ints_from_json(edges[i], where + ".edges[" + std::to_string(i) + "]");
            if (e.size() != 2) schema_error(where + ".edges[" + std::to_string(i) + "]", "expected [source, range]");
            out.push_back({e[0], e[1]});
        }
        return from_graph(v, out);
    }
    if (k == "explicit") {
        Correspondence e{alg, int_from_json(member(j, "dim", where), where + ".dim"),
                         matrices_from_json(member(j, "left", where), where + ".left"),
                         matrices_from_json(member(j, "right", where), where + ".right"),
                         matrices_from_json(member(j, "inner", where), where + ".inner")};
        const size_t n = static_cast<size_t>(alg.dim());
        if (e.left.size() != n || e.right.size() != n || e.inner.size() != n)
            throw Error(ErrorKind::Structural, "explicit correspondence needs one matrix per matrix unit");
        for (size_t u = 0; u < n; ++u)
            for (const Mat* m : {&e.left[u], &e.right[u], &e.inner[u]})
                if (m->rows() != e.dim || m->cols() != e.dim)
                    throw Error(ErrorKind::Structural, "explicit correspondence: matrix of the wrong size");
        return e;
    }
    schema_error(where + ".kind", "unknown kind \"" + k + "\"");
}

Representation representation_from_json(const Algebra& alg, const Json& j) {
    Representation r = multiplicity_rep(alg, ints_from_json(member(j, "mult", "sigma"), "sigma.mult"));
    if (j.contains("basis_change")) {
        r.basis_change = matrix_from_json(j["basis_change"], "sigma.basis_change");
        if (r.basis_change.rows() != r.dim() || r.basis_change.cols() != r.dim())
            throw Error(ErrorKind::Structural, "sigma.basis_change has the wrong size");
        if (residual(r.basis_change.adjoint() * r.basis_change, identity(r.dim())) > 1e-10)
            throw Error(ErrorKind::Validation, "sigma.basis_change is not unitary");
    }
    return r;
}

Json representation_to_json(const Representation& r) {
    Json j;
    j["mult"] = r.mult;
    if (r.basis_change.size() != 0) j["basis_change"] = to_json(r.basis_change);
    return j;
}

CovariantRep FixtureFile::rep(double tol) const {
    if (crossed) return crossed_rep(*crossed, tol);
    return make_covrep(E, sigma, *ttilde, tol);
}

namespace {

FixtureFile decode_fixture(const Json& j, const std::string& source) {
    if (!j.is_object()) schema_error(source, "expected an object at top level");
    if (j.contains("schema") && int_from_json(j["schema"], "schema") != kFixtureSchema)
        schema_error("schema", "unsupported schema version");

    FixtureFile f;
    if (j.contains("name")) f.name = j["name"].get<std::string>();
    if (j.contains("description")) f.description = j["description"].get<std::string>();
    const std::vector<int> blocks = ints_from_json(member(member(j, "algebra", source), "blocks", "algebra"), "algebra.blocks");
    for (int b : blocks)
        if (b < 1) throw Error(ErrorKind::Structural, "algebra blocks must be positive");
    if (blocks.empty()) throw Error(ErrorKind::Structural, "algebra needs at least one block");
    f.algebra = Algebra(blocks);

    const bool crossed = j.contains("t");
    if (j.contains("correspondence")) {
        f.correspondence = j["correspondence"];
    } else if (crossed && j.contains("alpha")) {
        f.correspondence = Json{{"kind", "endomorphism"}, {"alpha", j["alpha"]}};
    } else {
        schema_error(source, "missing key \"correspondence\"");
    }
    f.E = correspondence_from_json(f.algebra, f.correspondence);
    f.sigma = representation_from_json(f.algebra, member(j, "sigma", source));

    if (j.contains("options")) {
        const Json& o = j["options"];
        if (o.contains("fock_level")) f.options.fock_level = int_from_json(o["fock_level"], "options.fock_level");
        if (o.contains("tol")) {
            if (!o["tol"].is_number()) schema_error("options.tol", "expected a number");
            f.options.tol = o["tol"].get<double>();
        }
    }

    if (crossed) {
        if (f.correspondence.value("kind", "") != "endomorphism")
            throw Error(ErrorKind::Structural, "a crossed fixture needs an endomorphism correspondence");
        const Mat alpha = matrix_from_json(f.correspondence["alpha"], "correspondence.alpha");
        f.crossed = make_crossed(f.algebra, alpha, f.sigma, matrix_from_json(j["t"], "t"));
    } else {
        f.ttilde = matrix_from_json(member(j, "ttilde", source), "ttilde");
    }
    return f;
}

}  // namespace

FixtureFile parse_fixture(const std::string& text, const std::string& source) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::Parse, source + ": malformed JSON at " + location(text, e.byte));
    }
    try {
        return decode_fixture(j, source);
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::Parse, source + ": " + e.what());
    }
}

FixtureFile load_fixture(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str(), path);
}

Json fixture_to_json(const FixtureFile& f) {
    Json j;
    j["schema"] = kFixtureSchema;
    j["name"] = f.name;
    j["description"] = f.description;
    j["algebra"] = Json{{"blocks", f.algebra.blocks()}};
    j["correspondence"] = f.correspondence;
    j["sigma"] = representation_to_json(f.sigma);
    if (f.crossed)
        j["t"] = to_json(f.crossed->t);
    else
        j["ttilde"] = to_json(*f.ttilde);
    j["options"] = Json{{"fock_level", f.options.fock_level}, {"tol", f.options.tol}};
    return j;
}

std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace opm
