#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace garland;
using namespace garland::testing;

TEST(ParseCoxeter, InfinityAsNull) {
    const auto m = parse_coxeter(parse_json_text(R"({"rank": 2, "m": [[1, null], [null, 1]]})"));
    EXPECT_FALSE(m(0, 1).has_value());
    EXPECT_EQ(to_json(m).dump(), R"({"rank":2,"m":[[1,null],[null,1]]})");
}

TEST(ParseCoxeter, ErrorsNameTheField) {
    auto msg = [](const char* text) {
        try {
            parse_coxeter(parse_json_text(text));
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(msg(R"({"m": [[1]]})").find("rank"), std::string::npos);
    EXPECT_NE(msg(R"({"rank": 2, "m": [[1, 3]]})").find("field 'm'"), std::string::npos);
    EXPECT_NE(msg(R"({"rank": 2, "m": [[1, 3], [3, "x"]]})").find("m[1][1]"), std::string::npos);
    EXPECT_NE(msg(R"({"rank": 2, "m": [[1, 3], [4, 1]]})").find("symmetric"), std::string::npos);
    EXPECT_NE(msg(R"({"rank": 2, "m": [[1, 3], [3, 1]],)").find("line"), std::string::npos);
}

TEST(ParseComplex, RoundTrip) {
    const auto x = load_complex("complex/octahedron.json");
    const auto y = parse_complex(to_json(x));
    EXPECT_EQ(x.vertices(), y.vertices());
    EXPECT_EQ(x.facets(), y.facets());
    EXPECT_THROW(parse_complex(parse_json_text(R"({"n": 1, "vertices": [{"id": 0, "type": 2}], "facets": []})")),
                 ParseError);
    EXPECT_THROW(parse_complex(parse_json_text(
                     R"({"n": 1, "vertices": [{"id": 0, "type": 0}, {"id": 1, "type": 0}], "facets": [[0, 1]]})")),
                 ParseError);
}

TEST(ParseFamily, ExplicitAndRandom) {
    const auto src = parse_family_source(
        parse_json_text(R"({"ambient_dim": 3, "subspaces": [[[1, 0, 0], [2, 0, 0]], [[0, 1, 0], [0, 0, 5]]]})"));
    const auto& f = std::get<SubspaceFamily>(src);
    EXPECT_EQ(f.size(), 2u);
    EXPECT_EQ(f[0].dim(), 1u);
    EXPECT_EQ(f[1].dim(), 2u);

    const auto rnd = parse_family_source(parse_json_text(read_file(data_path("family/random_positive_definite.json"))));
    const auto& spec = std::get<RandomFamilySpec>(rnd);
    EXPECT_EQ(spec.ambient_dim, 8u);
    EXPECT_EQ(spec.member_dims, (std::vector<std::size_t>{6, 6, 6}));
    EXPECT_TRUE(spec.positive_definite);

    EXPECT_THROW(parse_family_source(parse_json_text(R"({"ambient_dim": 2, "subspaces": [[[1, 0, 0]]]})")), ParseError);
    EXPECT_THROW(parse_family_source(parse_json_text(R"({"ambient_dim": 2, "subspaces": []})")), ParseError);
}

TEST(ParseSimplex, WithReference) {
    const auto in = parse_simplex_input(parse_json_text(read_file(data_path("simplex/equilateral.json"))));
    EXPECT_EQ(in.vertices.size(), 3u);
    ASSERT_TRUE(in.reference.has_value());
    EXPECT_NEAR((*in.reference)(0, 1), -1.0 / 3, 1e-15);
}

TEST(ReadFile, MissingFileIsParseError) { EXPECT_THROW(read_file("/nonexistent/garland.json"), ParseError); }

TEST(InputDigest, Fnv1a) {
    EXPECT_EQ(input_digest(""), "fnv1a64:cbf29ce484222325");
    EXPECT_EQ(input_digest("a"), "fnv1a64:af63dc4c8601ec8c");
}

TEST(FormatDouble, SeventeenDigits) {
    using detail::format_double;
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(1.0), "1.0");
    EXPECT_EQ(format_double(-3.0), "-3.0");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1e300), "1.0000000000000001e+300");
    EXPECT_EQ(format_double(NAN), "null");
}

namespace {

Json random_json(std::mt19937_64& rng, int depth) {
    std::uniform_int_distribution<int> kind(0, depth > 2 ? 4 : 6);
    std::normal_distribution<double> g(0.0, 1e3);
    switch (kind(rng)) {
        case 0: return Json(g(rng));
        case 1: return Json(static_cast<long long>(rng() % 1000) - 500);
        case 2: return Json(rng() % 2 == 0);
        case 3: return Json("s" + std::to_string(rng() % 100));
        case 4: return Json(nullptr);
        case 5: {
            Json a = Json::array();
            for (int i = 0, k = static_cast<int>(rng() % 4); i < k; ++i) a.push_back(random_json(rng, depth + 1));
            return a;
        }
        default: {
            Json o = Json::object();
            for (int i = 0, k = static_cast<int>(rng() % 4); i < k; ++i)
                o["k" + std::to_string(i) + "_" + std::to_string(rng() % 10)] = random_json(rng, depth + 1);
            return o;
        }
    }
}

}  // namespace

// parse(serialize(r)) == r on random reports.
TEST(Report, RoundTripProperty) {
    std::mt19937_64 rng(2718);
    for (int t = 0; t < 300; ++t) {
        Report r;
        r.subcommand = "cmd" + std::to_string(t % 4);
        r.input_digest = input_digest(std::to_string(t));
        r.result = Json::object();
        for (int i = 0; i < 5; ++i) r.result["f" + std::to_string(i)] = random_json(rng, 0);
        if (t % 3 == 0) r.warnings.push_back("warning " + std::to_string(t));
        const std::string text = serialize_report(r);
        const Report back = parse_report(text);
        EXPECT_EQ(back, r) << text;
        EXPECT_EQ(serialize_report(back), text);
    }
}

TEST(Report, RealReportsRoundTrip) {
    const auto rep = vanishing_report(load_coxeter("coxeter/rank4_hyperbolic.json"), 4);
    Report r{"analyze-coxeter", "fnv1a64:0", Json{{"vanishing", to_json(rep)}}, {}};
    EXPECT_EQ(parse_report(serialize_report(r)), r);

    const auto lat = build_lattice(random_family(4, 5, 1, {2, 3}));
    Json checks = Json::array();
    for (std::uint32_t m = 0; m < 4; ++m) checks.push_back(to_json(verify_decomposition(lat, IndexSet(m))));
    Report d{"decompose", "fnv1a64:1", Json{{"decomposition", checks}}, {"w"}};
    EXPECT_EQ(parse_report(serialize_report(d)), d);
}

TEST(Report, InfiniteSingularValueBecomesNull) {
    DecompositionReport d;
    EXPECT_TRUE(to_json(d)["min_singular_value"].is_null());
}

TEST(Report, TextRendering) {
    Report r{"x", "fnv1a64:0", Json{{"a", 0.5}, {"m", Json::array({Json::array({1.0, 0.0}), Json::array({0.0, 1.0})})}},
             {"careful"}};
    const std::string text = render_text(r);
    EXPECT_NE(text.find("a: 0.5\n"), std::string::npos) << text;
    EXPECT_NE(text.find("m:\n  [1.0, 0.0]\n  [0.0, 1.0]\n"), std::string::npos) << text;
    EXPECT_NE(text.find("warning: careful"), std::string::npos);
}
