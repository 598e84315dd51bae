#pragma once

// Input file schemas (Coxeter matrices, partite complexes, subspace families,
// spherical simplex vertices) and report serialization. Reports are JSON with
// fixed field order and doubles printed with 17 significant digits.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "garland/building.hpp"
#include "garland/complex.hpp"
#include "garland/coxeter.hpp"
#include "garland/decomposition.hpp"
#include "garland/errors.hpp"
#include "garland/linalg.hpp"
#include "garland/subspaces.hpp"

namespace garland {

using Json = nlohmann::ordered_json;

/// Unreadable or schema-violating input; the message names the line or field.
class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json parse_json_text(std::string_view text, std::string_view origin = "input") {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(origin) + ": " + e.what());
    }
}

/// 64-bit FNV-1a of the raw bytes, as "fnv1a64:<hex>".
inline std::string input_digest(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

inline const Json& field(const Json& j, const char* name, const std::string& where) {
    if (!j.is_object()) throw ParseError(where + ": expected an object");
    auto it = j.find(name);
    if (it == j.end()) throw ParseError(where + ": missing field '" + name + "'");
    return *it;
}

inline long long as_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
    return j.get<long long>();
}

inline double as_double(const Json& j, const std::string& where) {
    if (!j.is_number()) throw ParseError(where + ": expected a number");
    return j.get<double>();
}

inline const Json& as_array(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected an array");
    return j;
}

inline Vector as_vector(const Json& j, const std::string& where) {
    as_array(j, where);
    Vector v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(as_double(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

inline std::vector<Vector> as_rows(const Json& j, const std::string& where) {
    as_array(j, where);
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < j.size(); ++i) rows.push_back(as_vector(j[i], where + "[" + std::to_string(i) + "]"));
    return rows;
}

// Rethrows library validation failures as parse errors tagged with a field.
template <class F>
auto in_field(const std::string& where, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const ValidationError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

}  // namespace detail

/// {"rank": r, "m": [[...], ...]} with null for ∞.
inline CoxeterMatrix parse_coxeter(const Json& j) {
    const long long rank = detail::as_int(detail::field(j, "rank", "coxeter"), "field 'rank'");
    if (rank < 1) throw ParseError("field 'rank': must be positive");
    const Json& m = detail::as_array(detail::field(j, "m", "coxeter"), "field 'm'");
    if (static_cast<long long>(m.size()) != rank)
        throw ParseError("field 'm': expected " + std::to_string(rank) + " rows, found " + std::to_string(m.size()));
    std::vector<std::vector<Gonality>> rows;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const std::string wr = "field 'm[" + std::to_string(i) + "]'";
        detail::as_array(m[i], wr);
        if (static_cast<long long>(m[i].size()) != rank)
            throw ParseError(wr + ": expected " + std::to_string(rank) + " entries");
        std::vector<Gonality> row;
        for (std::size_t k = 0; k < m[i].size(); ++k) {
            const std::string w = "field 'm[" + std::to_string(i) + "][" + std::to_string(k) + "]'";
            if (m[i][k].is_null()) {
                row.push_back(std::nullopt);
            } else {
                const long long v = detail::as_int(m[i][k], w + " (integer or null)");
                if (v < 1 || v > std::numeric_limits<int>::max()) throw ParseError(w + ": out of range");
                row.push_back(static_cast<int>(v));
            }
        }
        rows.push_back(std::move(row));
    }
    return detail::in_field("field 'm'", [&] { return CoxeterMatrix(std::move(rows)); });
}

inline Json to_json(const CoxeterMatrix& m) {
    Json rows = Json::array();
    for (const auto& row : m.entries()) {
        Json r = Json::array();
        for (const auto& g : row) r.push_back(g ? Json(*g) : Json(nullptr));
        rows.push_back(std::move(r));
    }
    return Json{{"rank", m.rank()}, {"m", std::move(rows)}};
}

/// {"n": n, "vertices": [{"id": i, "type": t}, ...], "facets": [[ids], ...]}
inline PartiteComplex parse_complex(const Json& j) {
    const long long n = detail::as_int(detail::field(j, "n", "complex"), "field 'n'");
    if (n < 0 || n > 64) throw ParseError("field 'n': out of range");
    const Json& vs = detail::as_array(detail::field(j, "vertices", "complex"), "field 'vertices'");
    std::vector<VertexSpec> vertices;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const std::string w = "field 'vertices[" + std::to_string(i) + "]'";
        const long long id = detail::as_int(detail::field(vs[i], "id", w), w + ".id");
        const long long type = detail::as_int(detail::field(vs[i], "type", w), w + ".type");
        if (type < 0 || type > n) throw ParseError(w + ".type: must lie in 0.." + std::to_string(n));
        vertices.push_back({id, static_cast<int>(type)});
    }
    const Json& fs = detail::as_array(detail::field(j, "facets", "complex"), "field 'facets'");
    std::vector<std::vector<VertexId>> facets;
    for (std::size_t i = 0; i < fs.size(); ++i) {
        const std::string w = "field 'facets[" + std::to_string(i) + "]'";
        detail::as_array(fs[i], w);
        std::vector<VertexId> f;
        for (std::size_t k = 0; k < fs[i].size(); ++k) f.push_back(detail::as_int(fs[i][k], w));
        facets.push_back(std::move(f));
    }
    return detail::in_field("complex", [&] {
        return PartiteComplex(static_cast<int>(n), std::move(vertices), std::move(facets));
    });
}

inline Json to_json(const PartiteComplex& x) {
    Json vertices = Json::array();
    for (const auto& v : x.vertices()) vertices.push_back(Json{{"id", v.id}, {"type", v.type}});
    Json facets = Json::array();
    for (const auto& f : x.facets()) facets.push_back(f);
    return Json{{"n", x.n()}, {"vertices", std::move(vertices)}, {"facets", std::move(facets)}};
}

/// Parameters of a seeded random family given in place of explicit subspaces.
struct RandomFamilySpec {
    std::size_t ambient_dim = 0;
    std::vector<std::size_t> member_dims;
    bool positive_definite = false;
};

using FamilySource = std::variant<SubspaceFamily, RandomFamilySpec>;

/// {"ambient_dim": d, "subspaces": [[v, ...], ...]} with raw spanning sets, or
/// {"random": {"ambient_dim": d, "member_dims": [...], "positive_definite": bool}}.
inline FamilySource parse_family_source(const Json& j) {
    if (j.is_object() && j.contains("random")) {
        const Json& r = j["random"];
        RandomFamilySpec spec;
        const long long d = detail::as_int(detail::field(r, "ambient_dim", "random"), "field 'random.ambient_dim'");
        if (d < 1) throw ParseError("field 'random.ambient_dim': must be positive");
        spec.ambient_dim = static_cast<std::size_t>(d);
        const Json& dims = detail::as_array(detail::field(r, "member_dims", "random"), "field 'random.member_dims'");
        if (dims.empty()) throw ParseError("field 'random.member_dims': must not be empty");
        for (std::size_t i = 0; i < dims.size(); ++i) {
            const long long v = detail::as_int(dims[i], "field 'random.member_dims'");
            if (v < 0 || v > d) throw ParseError("field 'random.member_dims': dimension out of range");
            spec.member_dims.push_back(static_cast<std::size_t>(v));
        }
        if (r.contains("positive_definite")) {
            if (!r["positive_definite"].is_boolean())
                throw ParseError("field 'random.positive_definite': expected a boolean");
            spec.positive_definite = r["positive_definite"].get<bool>();
        }
        return spec;
    }
    const long long d = detail::as_int(detail::field(j, "ambient_dim", "family"), "field 'ambient_dim'");
    if (d < 1) throw ParseError("field 'ambient_dim': must be positive");
    const Json& subs = detail::as_array(detail::field(j, "subspaces", "family"), "field 'subspaces'");
    if (subs.empty()) throw ParseError("field 'subspaces': at least one subspace is required");
    std::vector<Subspace> members;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        const std::string w = "field 'subspaces[" + std::to_string(i) + "]'";
        const auto vectors = detail::as_rows(subs[i], w);
        members.push_back(detail::in_field(w, [&] { return Subspace::span(vectors, static_cast<std::size_t>(d)); }));
    }
    return SubspaceFamily(static_cast<std::size_t>(d), std::move(members));
}

inline Json to_json(const SubspaceFamily& f) {
    Json subs = Json::array();
    for (const auto& s : f.members()) subs.push_back(s.basis());
    return Json{{"ambient_dim", f.ambient_dim()}, {"subspaces", std::move(subs)}};
}

struct SimplexInput {
    std::vector<Vector> vertices;
    std::optional<SymMatrix> reference;
};

/// {"vertices": [[...], ...], "reference": [[...], ...] (optional)}
inline SimplexInput parse_simplex_input(const Json& j) {
    SimplexInput in;
    in.vertices = detail::as_rows(detail::field(j, "vertices", "simplex"), "field 'vertices'");
    if (in.vertices.empty()) throw ParseError("field 'vertices': at least one vertex is required");
    if (j.contains("reference") && !j["reference"].is_null()) {
        const auto rows = detail::as_rows(j["reference"], "field 'reference'");
        in.reference = detail::in_field("field 'reference'", [&] { return SymMatrix::from_rows(rows); });
    }
    return in;
}

inline Json to_json(const SymMatrix& m) { return Json(m.rows()); }

inline Json to_json(const DefinitenessClass& d) {
    return Json{{"tag", to_string(d.tag)}, {"corank", d.corank}};
}

inline Json to_json(IndexSet s) { return Json(s.elements()); }

/// Non-finite values become null so reports stay valid JSON.
inline Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json to_json(const DecompositionReport& r) {
    return Json{{"tau", to_json(r.tau)},
                {"holds", r.holds},
                {"dim_h_tau", r.dim_h_tau},
                {"sum_of_component_dims", r.sum_of_component_dims},
                {"min_singular_value", number_or_null(r.min_singular_value)},
                {"reconstruction_residual", r.reconstruction_residual}};
}

inline Json to_json(const ComplexValidation& v) {
    return Json{{"partite", v.partite},
                {"pure", v.pure},
                {"b1", v.b1},
                {"b2", v.b2},
                {"b2_failure", v.b2_failure ? Json(*v.b2_failure) : Json(nullptr)},
                {"b3", "not checkable"},
                {"b4", "not checkable"},
                {"notes", v.notes}};
}

inline Json to_json(const ComplexCosineReport& r) {
    Json pairs = Json::array();
    for (const auto& p : r.per_pair)
        pairs.push_back(Json{{"types", {p.type_i, p.type_j}},
                             {"lambda", p.lambda},
                             {"representatives", p.representatives},
                             {"disagreement", p.disagreement},
                             {"link_diameter", p.link_diameter}});
    return Json{{"matrix", to_json(r.matrix.matrix())},
                {"per_pair", std::move(pairs)},
                {"definiteness", to_json(r.definiteness)},
                {"min_eigenvalue", r.min_eigenvalue},
                {"degenerate", r.degenerate},
                {"notes", r.notes}};
}

inline Json to_json(const VanishingReport& r) {
    Json verdicts = Json::array();
    for (const auto& v : r.verdicts)
        verdicts.push_back(Json{{"kind", to_string(v.kind)},
                                {"degree", v.degree},
                                {"asserted", v.asserted},
                                {"statement", v.statement}});
    std::vector<int> degrees;
    for (const auto& v : r.verdicts)
        if (v.kind == VerdictKind::complex_cohomology && v.asserted) degrees.push_back(v.degree);
    return Json{{"coxeter_class", to_string(r.coxeter_class)},
                {"mu_tilde", r.mu_tilde},
                {"q", r.q},
                {"threshold", r.threshold_value},
                {"criterion_met", r.criterion_met},
                {"borderline", r.borderline},
                {"building_dim", r.building_dim},
                {"asserted_degrees", degrees},
                {"verdicts", std::move(verdicts)},
                {"lower_bound_matrix", to_json(r.lower_bound_matrix)},
                {"lower_bound_min_eig", r.lower_bound_min_eig},
                {"hypotheses", r.hypotheses}};
}

struct Report {
    std::string subcommand;
    std::string input_digest;
    Json result = Json::object();
    std::vector<std::string> warnings;

    friend bool operator==(const Report&, const Report&) = default;
};

namespace detail {

inline std::string format_double(double x) {
    if (!std::isfinite(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s = buf;
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

inline void write_json(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(it.key()).dump() + ": ";
                write_json(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            const bool flat = std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); });
            if (flat) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    write_json(j[i], out, indent + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                write_json(j[i], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float: out += format_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

inline void write_text(const Json& j, const std::string& prefix, std::string& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            write_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        return;
    }
    if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_object(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) write_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
        return;
    }
    std::string value;
    write_json(j, value, 0);
    // Nested numeric arrays (matrices) print one row per line.
    if (j.is_array() && !j.empty() && j[0].is_array()) {
        out += prefix + ":\n";
        for (const auto& row : j) {
            std::string r;
            write_json(row, r, 0);
            out += "  " + r + "\n";
        }
        return;
    }
    out += prefix + ": " + (j.is_string() ? j.get<std::string>() : value) + "\n";
}

}  // namespace detail

inline Json to_json(const Report& r) {
    return Json{{"subcommand", r.subcommand},
                {"input_digest", r.input_digest},
                {"result", r.result},
                {"warnings", r.warnings}};
}

/// Deterministic JSON text: fixed field order, 17 significant digits.
inline std::string serialize_report(const Report& r) {
    std::string out;
    detail::write_json(to_json(r), out, 0);
    out += "\n";
    return out;
}

inline Report parse_report(std::string_view text) {
    const Json j = parse_json_text(text, "report");
    Report r;
    r.subcommand = detail::field(j, "subcommand", "report").get<std::string>();
    r.input_digest = detail::field(j, "input_digest", "report").get<std::string>();
    r.result = detail::field(j, "result", "report");
    for (const auto& w : detail::as_array(detail::field(j, "warnings", "report"), "field 'warnings'"))
        r.warnings.push_back(w.get<std::string>());
    return r;
}

inline std::string render_text(const Report& r) {
    std::string out = "subcommand: " + r.subcommand + "\ninput: " + r.input_digest + "\n";
    detail::write_text(r.result, "", out);
    for (const auto& w : r.warnings) out += "warning: " + w + "\n";
    return out;
}

}  // namespace garland
