#pragma once

// Subcommands of the `garland` tool. Each command reads one input file and
// returns a Report; run_cli adds flag parsing, output formatting and exit
// codes (0 success, 1 validation or parse error, 2 criterion not applicable).

#include <cstdint>
#include <exception>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "garland/building.hpp"
#include "garland/complex.hpp"
#include "garland/coxeter.hpp"
#include "garland/decomposition.hpp"
#include "garland/errors.hpp"
#include "garland/io.hpp"
#include "garland/linalg.hpp"
#include "garland/subspaces.hpp"

namespace garland::cli {

enum class OutputFormat { json, text };

struct Options {
    std::string input_path;
    std::optional<long> thickness;
    bool min_thickness = false;
    std::optional<std::string> tau;  // comma separated indices; empty string is ∅
    double tol = 1e-7;
    std::optional<std::uint64_t> seed;
    OutputFormat format = OutputFormat::json;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInapplicable = 2;

namespace detail {

struct Loaded {
    Json json;
    std::string digest;
};

inline Loaded load(const std::string& path) {
    const std::string bytes = read_file(path);
    return {parse_json_text(bytes, path), input_digest(bytes)};
}

inline IndexSet parse_tau(const std::string& text, std::size_t n) {
    IndexSet tau;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(token, &used);
        } catch (const std::exception&) {
            throw ValidationError("--tau: '" + token + "' is not an integer");
        }
        if (used != token.size()) throw ValidationError("--tau: '" + token + "' is not an integer");
        if (v < 0 || static_cast<std::size_t>(v) > n)
            throw ValidationError("--tau: index " + token + " outside {0.." + std::to_string(n) + "}");
        tau = tau.with(static_cast<std::size_t>(v));
    }
    return tau;
}

}  // namespace detail

inline Report cmd_analyze_coxeter(const Options& opt) {
    const auto in = detail::load(opt.input_path);
    const CoxeterMatrix m = parse_coxeter(in.json);
    if (opt.thickness && opt.min_thickness)
        throw ValidationError("--thickness and --min-thickness are mutually exclusive");

    const CosineMatrix c = coxeter_cosine(m);
    const Spectrum s = sym_eigs(c.matrix());
    Report r{"analyze-coxeter", in.digest, Json::object(), {}};
    r.result["coxeter"] = to_json(m);
    r.result["cosine_matrix"] = to_json(c.matrix());
    r.result["eigenvalues"] = s.eigenvalues;
    r.result["mu_tilde"] = s.min();
    r.result["definiteness"] = to_json(classify_spectrum(s.eigenvalues, default_zero_tol(c.matrix())));
    r.result["classification"] = to_string(classify_coxeter(m));

    if (opt.thickness) {
        r.result["vanishing"] = to_json(vanishing_report(m, *opt.thickness));
    } else if (opt.min_thickness) {
        const long q = min_thickness(c);
        Json mt{{"q_star", q}, {"threshold_at_q_star", threshold(q)}};
        if (q > 2) mt["threshold_below_q_star"] = threshold(q - 1);
        r.result["min_thickness"] = std::move(mt);
    }
    if (m.rank() < 3) r.warnings.push_back("rank < 3: the vanishing criterion needs building dimension >= 2");
    return r;
}

inline Report cmd_analyze_complex(const Options& opt) {
    const auto in = detail::load(opt.input_path);
    const PartiteComplex x = parse_complex(in.json);
    const ComplexValidation v = validate_complex(x);
    if (!v.b2)
        throw NotConnectedError("complex violates B2: link of simplex " + to_string(*v.b2_failure) +
                                " is not gallery connected");
    const ComplexCosineReport cos = cosine_matrix_of_complex(x);

    Report r{"analyze-complex", in.digest, Json::object(), {}};
    r.result["n"] = x.n();
    r.result["vertex_count"] = x.vertices().size();
    r.result["facet_count"] = x.facet_count();
    r.result["validation"] = to_json(v);
    r.result["thickness"] = thickness(x);
    r.result["cosine"] = to_json(cos);
    if (!v.pure) r.warnings.push_back("complex is not pure: some listed vertices lie in no facet");
    for (const auto& p : cos.per_pair)
        if (p.disagreement > 1e-9)
            r.warnings.push_back("types {" + std::to_string(p.type_i) + "," + std::to_string(p.type_j) +
                                 "}: link spectra disagree across representatives; the maximum is used");
    return r;
}

inline Report cmd_decompose(const Options& opt) {
    const auto in = detail::load(opt.input_path);
    const FamilySource source = parse_family_source(in.json);
    Report r{"decompose", in.digest, Json::object(), {}};

    std::optional<SubspaceFamily> family;
    if (const auto* spec = std::get_if<RandomFamilySpec>(&source)) {
        if (!opt.seed) throw ValidationError("a random family requires --seed");
        const std::size_t n = spec->member_dims.size() - 1;
        if (spec->positive_definite) {
            auto sample = random_positive_definite_family(*opt.seed, spec->ambient_dim, n, spec->member_dims);
            r.result["rejection_attempts"] = sample.attempts;
            family = std::move(sample.family);
        } else {
            family = random_family(*opt.seed, spec->ambient_dim, n, spec->member_dims);
        }
        r.result["seed"] = *opt.seed;
    } else {
        family = std::get<SubspaceFamily>(source);
    }
    if (!(opt.tol > 0.0)) throw ValidationError("--tol must be positive");

    const std::size_t n = family->n();
    if (n > IndexSet::kMaxIndex)
        throw ValidationError("family has " + std::to_string(family->size()) + " members; at most 31 are supported");
    std::optional<IndexSet> only;
    if (opt.tau) only = detail::parse_tau(*opt.tau, n);

    const CosineMatrix a = cosine_matrix_of_family(*family);
    const Spectrum s = sym_eigs(a.matrix());
    const DefinitenessClass cls = classify_spectrum(s.eigenvalues, default_zero_tol(a.matrix()));
    const SubspaceLattice lattice = build_lattice(*family);

    r.result["ambient_dim"] = family->ambient_dim();
    r.result["n"] = n;
    std::vector<std::size_t> dims;
    for (const auto& v : family->members()) dims.push_back(v.dim());
    r.result["member_dims"] = dims;
    r.result["cosine_matrix"] = to_json(a.matrix());
    r.result["eigenvalues"] = s.eigenvalues;
    r.result["min_eigenvalue"] = s.min();
    r.result["definiteness"] = to_json(cls);

    Json lat = Json::array();
    const std::uint32_t count = std::uint32_t{1} << (n + 1);
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        const IndexSet tau(mask);
        lat.push_back(Json{{"tau", to_json(tau)},
                           {"dim_h_lower", lattice.lower(tau).dim()},
                           {"dim_h_upper", lattice.upper(tau).dim()}});
    }
    r.result["lattice"] = std::move(lat);

    Json checks = Json::array();
    bool all = true;
    for (std::uint32_t mask = 0; mask < count; ++mask) {
        const IndexSet tau(mask);
        if (only && tau != *only) continue;
        const DecompositionReport d = verify_decomposition(lattice, tau, opt.tol);
        all = all && d.holds;
        checks.push_back(to_json(d));
    }
    r.result["decomposition"] = std::move(checks);
    r.result["all_hold"] = all;
    if (cls.tag != Definiteness::positive_definite)
        r.warnings.push_back("cosine matrix is not positive definite; decomposition outcomes are reported as observed");
    return r;
}

inline Report cmd_spherical_simplex(const Options& opt) {
    const auto in = detail::load(opt.input_path);
    const SimplexInput input = parse_simplex_input(in.json);
    const SubspaceFamily faces = spherical_face_family(input.vertices);
    const CosineMatrix a = cosine_matrix_of_family(faces);
    const Spectrum s = sym_eigs(a.matrix());

    Report r{"spherical-simplex", in.digest, Json::object(), {}};
    r.result["vertex_count"] = input.vertices.size();
    r.result["ambient_dim"] = faces.ambient_dim();
    r.result["cosine_matrix"] = to_json(a.matrix());
    r.result["eigenvalues"] = s.eigenvalues;
    r.result["min_eigenvalue"] = s.min();
    r.result["definiteness"] = to_json(classify_spectrum(s.eigenvalues, default_zero_tol(a.matrix())));
    if (input.reference) {
        const SymMatrix& ref = *input.reference;
        if (ref.dim() != a.dim())
            throw ValidationError("reference matrix is " + std::to_string(ref.dim()) + "x" + std::to_string(ref.dim()) +
                                  ", face cosine matrix is " + std::to_string(a.dim()) + "x" + std::to_string(a.dim()));
        double dev = 0.0;
        for (std::size_t i = 0; i < ref.dim(); ++i)
            for (std::size_t j = 0; j < ref.dim(); ++j) dev = std::max(dev, std::abs(ref(i, j) - a(i, j)));
        const bool below = matrix_leq(a.matrix(), ref);
        const bool above = matrix_leq(ref, a.matrix());
        std::string text = below && above ? "face cosine matrix equals the reference"
                           : below        ? "face cosine matrix is entrywise below the reference"
                           : above        ? "face cosine matrix is entrywise above the reference"
                                          : "face cosine matrix and reference are not comparable entrywise";
        r.result["reference"] = Json{{"max_deviation", dev},
                                     {"face_leq_reference", below},
                                     {"reference_leq_face", above},
                                     {"reference_min_eigenvalue", min_eigenvalue(ref)},
                                     {"comparison", text}};
    }
    return r;
}

inline std::string format_report(const Report& r, OutputFormat f) {
    return f == OutputFormat::json ? serialize_report(r) : render_text(r);
}

/// Full command line: `garland <subcommand> --input PATH [flags]`.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cosine matrices, decompositions and vanishing criteria for buildings", "garland"};
    app.require_subcommand(1);
    Options opt;
    std::string format = "json";
    const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json}, {"text", OutputFormat::text}};

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--input", opt.input_path, "Input file")->required();
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", opt.seed, "Seed for randomized inputs");
    };
    CLI::App* cox = app.add_subcommand("analyze-coxeter", "Coxeter cosine matrix, class and thickness criterion");
    add_common(cox);
    auto* thick = cox->add_option("--thickness", opt.thickness, "Thickness parameter q (thickness q+1)");
    auto* minq = cox->add_flag("--min-thickness", opt.min_thickness, "Smallest q meeting the criterion");
    thick->excludes(minq);
    CLI::App* cpx = app.add_subcommand("analyze-complex", "Validation, thickness and cosine matrix of a complex");
    add_common(cpx);
    CLI::App* dec = app.add_subcommand("decompose", "Intersection lattice and direct-sum check");
    add_common(dec);
    dec->add_option("--tau", opt.tau, "Comma separated index set to check (default: all)");
    dec->add_option("--tol", opt.tol, "Direct-sum tolerance");
    CLI::App* sph = app.add_subcommand("spherical-simplex", "Face-subspace cosine matrix of a spherical simplex");
    add_common(sph);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalid;
    }
    opt.format = formats.at(format);

    try {
        Report r;
        if (cox->parsed()) r = cmd_analyze_coxeter(opt);
        else if (cpx->parsed()) r = cmd_analyze_complex(opt);
        else if (dec->parsed()) r = cmd_decompose(opt);
        else r = cmd_spherical_simplex(opt);
        out << format_report(r, opt.format);
        return kExitOk;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const CriterionError& e) {
        err << "criterion not applicable: " << e.what() << "\n";
        return kExitInapplicable;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
}

}  // namespace garland::cli
