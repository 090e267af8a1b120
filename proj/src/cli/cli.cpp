#include "polyseq/cli.hpp"

#include "polyseq/canonical.hpp"
#include "polyseq/counting.hpp"
#include "polyseq/error.hpp"
#include "polyseq/evaluate.hpp"
#include "polyseq/graphs.hpp"
#include "polyseq/paley.hpp"
#include "polyseq/parser.hpp"
#include "polyseq/report.hpp"
#include "polyseq/scheme_text.hpp"
#include "polyseq/sequence_json.hpp"

#include <CLI11.hpp>

#include <sstream>

namespace polyseq {

namespace {

struct Output {
    std::ostringstream out;
    std::ostringstream err;
    int code = 0;
};

ReportFormat format_of(const std::string& text) {
    auto f = parse_format(text);
    if (!f) throw Error(ErrorCode::InvalidArgument, "--format must be json or csv");
    return *f;
}

SchemeParams params_of(const std::string& joined, const std::vector<std::string>& single) {
    SchemeParams out;
    std::vector<std::string> items = single;
    std::stringstream in(joined);
    for (std::string item; std::getline(in, item, ';');) {
        if (!item.empty()) items.push_back(item);
    }
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw Error(ErrorCode::InvalidArgument, "parameter '" + item + "' is not of the form name=value");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

std::vector<long long> integer_list(const std::string& text, const char* what) {
    std::vector<long long> out;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidArgument, std::string(what) + ": '" + item + "' is not an integer");
        }
    }
    return out;
}

std::string read_formula(const std::string& text, const std::string& file) {
    if (!text.empty() && !file.empty()) throw Error(ErrorCode::InvalidArgument, "give --formula or --formula-file, not both");
    return file.empty() ? text : read_text_file(file);
}

Json signature_json(const Signature& sig) {
    Json j = Json::array();
    for (const auto& s : sig.symbols()) j.push_back({{"name", s.name}, {"arity", s.arity}});
    return j;
}

// ---- structure -------------------------------------------------------------

struct StructureArgs {
    std::string kind, in, out, orders;
    long long n = 0, k = 1, l = 0;
};

Structure build_structure(const StructureArgs& a) {
    if (a.n < 0) throw Error(ErrorCode::InvalidArgument, "--n must be non-negative");
    const auto n = static_cast<std::size_t>(a.n);
    if (a.kind == "complete") return complete_graph(n);
    if (a.kind == "empty") return empty_graph(n);
    if (a.kind == "cycle") return cycle_graph(n);
    if (a.kind == "path") return path_graph(n);
    if (a.kind == "tournament") return build_transitive_tournament(n);
    if (a.kind == "marked-vertex") return build_marked_vertex();
    if (a.kind == "paley") return paley_graph(a.n);
    if (a.kind == "basic") {
        BasicStructureSpec spec{static_cast<std::size_t>(a.k), static_cast<std::size_t>(a.l), {}};
        for (auto v : integer_list(a.orders, "--orders")) {
            if (v < 0) throw Error(ErrorCode::InvalidArgument, "--orders must be non-negative");
            spec.orders.push_back(static_cast<std::size_t>(v));
        }
        if (spec.orders.size() != spec.k) throw Error(ErrorCode::InvalidArgument, "--orders needs k values");
        return build_basic(spec);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown --kind '" + a.kind +
                                                "' (complete, empty, cycle, path, tournament, marked-vertex, paley, basic)");
}

Json structure_summary(const Structure& s) {
    Json counts = Json::object();
    for (std::size_t i = 0; i < s.symbol_count(); ++i) counts[s.signature()[i].name] = s.relation(i).size();
    Json j = {{"domain", s.domain_size()},
              {"signature", signature_json(s.signature())},
              {"tupleCounts", std::move(counts)},
              {"components", connected_components(s).size()},
              {"maxDegree", max_degree(s)}};
    if (is_graph(s)) j["edges"] = edge_count(s);
    return j;
}

} // namespace

CommandResult run(const std::vector<std::string>& argv) {
    Output o;
    CLI::App app{"Strongly polynomial sequences: structures, counting, interpretations, detection", "polyseq"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // structure
    StructureArgs sa;
    auto* structure = app.add_subcommand("structure", "Build, show or reformat structures");
    structure->require_subcommand(1);
    auto* s_build = structure->add_subcommand("build", "Build a named structure as JSON");
    s_build->add_option("--kind", sa.kind, "complete|empty|cycle|path|tournament|marked-vertex|paley|basic")->required();
    s_build->add_option("--n", sa.n, "Order");
    s_build->add_option("--k", sa.k, "Tournaments (basic)");
    s_build->add_option("--l", sa.l, "Marked vertices (basic)");
    s_build->add_option("--orders", sa.orders, "Comma-separated tournament orders (basic)");
    s_build->add_option("--out", sa.out, "Write here instead of stdout");
    auto* s_show = structure->add_subcommand("show", "Summarize a structure file");
    s_show->add_option("--in", sa.in, "Structure JSON")->required();
    auto* s_format = structure->add_subcommand("format", "Print the canonical serialization");
    s_format->add_option("--in", sa.in, "Structure JSON")->required();

    // eval
    std::string formula_text, formula_file, in_path;
    bool list = false;
    auto* eval = app.add_subcommand("eval", "Count the tuples satisfying a formula");
    eval->add_option("--formula", formula_text, "Formula text");
    eval->add_option("--formula-file", formula_file, "File holding the formula");
    eval->add_option("--in", in_path, "Structure JSON")->required();
    eval->add_flag("--list", list, "Also list the satisfying tuples");

    // count
    std::string mode = "hom", pattern_path, target_path, format = "text";
    auto* cnt = app.add_subcommand("count", "hom / inj / ind counts");
    cnt->add_option("--mode", mode, "hom|inj|ind");
    cnt->add_option("--pattern", pattern_path, "Pattern JSON")->required();
    cnt->add_option("--target", target_path, "Target JSON")->required();
    cnt->add_option("--format", format, "text|json");

    // interpret
    std::string scheme_path, builtin, out_path, joined_params;
    std::vector<std::string> params;
    std::optional<long long> index;
    auto* interp = app.add_subcommand("interpret", "Apply an interpretation scheme");
    interp->add_option("--scheme", scheme_path, "Scheme text file");
    interp->add_option("--builtin", builtin, "Built-in scheme name");
    interp->add_option("--param", params, "name=value for built-ins (repeatable)");
    interp->add_option("--params", joined_params, "name=value;name=value");
    interp->add_option("--in", in_path, "Structure JSON")->required();
    interp->add_option("--out", out_path, "Write the result here");
    interp->add_option("--n", index, "Index for quotient class certificates");
    bool print_scheme = false;
    interp->add_flag("--print-scheme", print_scheme, "Print the scheme in canonical text form and stop");

    // detect
    std::string spec_path, gallery_name, csv_path;
    std::size_t verify = 5;
    std::string report_format = "json";
    auto* det = app.add_subcommand("detect", "Sample, interpolate and verify a count along a sequence");
    det->add_option("--spec", spec_path, "Sequence JSON");
    det->add_option("--gallery", gallery_name, "Use a gallery entry's sequence");
    det->add_option("--params", joined_params, "Gallery parameters name=value;...");
    det->add_option("--pattern", pattern_path, "Pattern JSON");
    det->add_option("--mode", mode, "hom|inj|ind for patterns");
    det->add_option("--formula", formula_text, "Quantifier-free formula text");
    det->add_option("--formula-file", formula_file, "File holding the formula");
    det->add_option("--verify", verify, "Held-out points");
    det->add_option("--csv", csv_path, "Also write the CSV report here");
    det->add_option("--format", report_format, "json|csv");

    // gallery
    auto* gal = app.add_subcommand("gallery", "Gallery constructions");
    gal->require_subcommand(1);
    gal->add_subcommand("list", "Entries, parameters and default ranges as JSON");
    auto* g_run = gal->add_subcommand("run", "Build an entry (or check it with --check)");
    g_run->add_option("name", gallery_name, "Entry name")->required();
    g_run->add_option("--params", joined_params, "name=value;name=value");
    g_run->add_option("--param", params, "name=value (repeatable)");
    long long gn = 3;
    g_run->add_option("--n", gn, "Index to build");
    bool check = false, no_detect = false;
    std::string range;
    g_run->add_flag("--check", check, "Compare scheme and oracle over the range and run the detector");
    g_run->add_option("--range", range, "first..last");
    g_run->add_flag("--no-detect", no_detect, "Skip the detector in --check");
    g_run->add_option("--format", report_format, "json|csv");

    // decompose
    std::size_t cap = 4, held_out = 3;
    auto* dec = app.add_subcommand("decompose", "Bounded-degree decomposition into components");
    dec->add_option("--spec", spec_path, "Sequence JSON");
    dec->add_option("--gallery", gallery_name, "Use a gallery entry's sequence");
    dec->add_option("--params", joined_params, "Gallery parameters");
    dec->add_option("--cap", cap, "Degree cap");
    dec->add_option("--held-out", held_out, "Held-out indices");
    dec->add_option("--format", report_format, "json|csv");

    // paley
    std::string primes = "5,13,17,29,37";
    std::optional<std::size_t> samples;
    auto* pal = app.add_subcommand("paley", "Homomorphism counts into Paley graphs");
    pal->add_option("--pattern", pattern_path, "Pattern JSON")->required();
    pal->add_option("--primes", primes, "Comma-separated primes q = 1 mod 4");
    pal->add_option("--samples", samples, "Primes used for the fit (default all but the last)");
    pal->add_option("--format", report_format, "json|csv");

    std::vector<std::string> args = argv.empty() ? std::vector<std::string>{"polyseq"} : argv;
    std::vector<char*> raw;
    for (auto& a : args) raw.push_back(a.data());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        if (code == 0) return {0, out.str(), err.str()};
        return {2, "", "error[usage]: " + std::string(e.what()) + "\n"};
    }

    auto spec_from = [&]() -> SpecPtr {
        if (spec_path.empty() == gallery_name.empty()) {
            throw Error(ErrorCode::InvalidArgument, "give exactly one of --spec or --gallery");
        }
        if (!spec_path.empty()) return load_sequence(spec_path);
        const auto& entry = gallery_entry(gallery_name);
        return entry.spec(gallery_params(entry, params_of(joined_params, params)));
    };

    std::string payload;
    int code = 0;
    try {
        if (*structure) {
            if (*s_build) {
                Structure s = build_structure(sa);
                if (sa.out.empty()) payload = structure_to_json(s) + "\n";
                else save_structure(sa.out, s);
            } else if (*s_show) {
                payload = render_json(structure_summary(load_structure(sa.in)));
            } else {
                payload = structure_to_json(load_structure(sa.in)) + "\n";
            }
        } else if (*eval) {
            const Structure s = load_structure(in_path);
            const auto text = read_formula(formula_text, formula_file);
            if (text.empty()) throw Error(ErrorCode::InvalidArgument, "give --formula or --formula-file");
            const Formula phi = parse_formula(text, s.signature());
            Json j = {{"formula", phi.to_string()}, {"freeVariables", phi.free_vars()}};
            if (list) {
                Json tuples = Json::array();
                BigInt n = 0;
                for_each_satisfying(phi, s, [&](std::span<const Vertex> t) {
                    tuples.push_back(std::vector<Vertex>(t.begin(), t.end()));
                    ++n;
                });
                j["count"] = bigint_json(n);
                j["tuples"] = std::move(tuples);
            } else {
                j["count"] = bigint_json(count_satisfying(phi, s));
            }
            payload = render_json(std::move(j));
        } else if (*cnt) {
            auto m = parse_mode(mode);
            if (!m) throw Error(ErrorCode::InvalidArgument, "--mode must be hom, inj or ind");
            if (format != "text" && format != "json") throw Error(ErrorCode::InvalidArgument, "--format must be text or json");
            const auto r = count(*m, load_structure(pattern_path), load_structure(target_path));
            if (format == "text") {
                payload = r.value.str() + "\n";
            } else {
                payload = render_json({{"mode", mode_name(*m)}, {"value", bigint_json(r.value)},
                                       {"nodesExplored", r.nodes_explored}});
            }
        } else if (*interp) {
            if (scheme_path.empty() == builtin.empty()) {
                throw Error(ErrorCode::InvalidArgument, "give exactly one of --scheme or --builtin");
            }
            const Scheme scheme = scheme_path.empty() ? builtin_scheme(builtin, params_of(joined_params, params))
                                                      : load_scheme(scheme_path);
            if (print_scheme) {
                payload = scheme_to_text(scheme);
            } else {
                const Structure a = load_structure(in_path);
                ApplyOptions options;
                options.index = index;
                const auto result = apply_scheme(scheme, a, options);
                if (out_path.empty()) {
                    payload = structure_to_json(result.structure) + "\n";
                } else {
                    save_structure(out_path, result.structure);
                    Json j = structure_summary(result.structure);
                    j["scheme"] = scheme_name(scheme);
                    if (!result.class_sizes.empty()) j["classSizes"] = result.class_sizes;
                    payload = render_json(std::move(j));
                }
            }
        } else if (*det) {
            const auto fmt = format_of(report_format);
            const SpecPtr spec = spec_from();
            const auto text = read_formula(formula_text, formula_file);
            if (text.empty() == pattern_path.empty()) {
                throw Error(ErrorCode::InvalidArgument, "give exactly one of --pattern or --formula");
            }
            Query query = FormulaQuery{Formula()};
            if (!pattern_path.empty()) {
                auto m = parse_mode(mode);
                if (!m) throw Error(ErrorCode::InvalidArgument, "--mode must be hom, inj or ind");
                query = PatternQuery{load_structure(pattern_path), *m};
            } else {
                query = FormulaQuery{parse_formula(text, spec_signature(*spec))};
            }
            DetectOptions options;
            options.verify_count = verify;
            const auto fit = detect_polynomial(spec, query, options);
            if (!csv_path.empty()) write_text_file(csv_path, fit_csv(fit));
            if (fmt == ReportFormat::Json) {
                Json j = fit_json(fit);
                j["sequence"] = spec_summary(*spec);
                j["query"] = query_summary(query);
                payload = render_json(std::move(j));
            } else {
                payload = fit_csv(fit);
            }
            code = fit.verdict == Verdict::Polynomial ? 0 : 1;
        } else if (*gal) {
            if (gal->got_subcommand("list")) {
                payload = gallery_list_json().dump(2) + "\n";
            } else if (check) {
                const auto fmt = format_of(report_format);
                GalleryCheckOptions options;
                options.detect = !no_detect;
                if (!range.empty()) {
                    auto dots = range.find("..");
                    if (dots == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--range must be first..last");
                    auto a = integer_list(range.substr(0, dots), "--range");
                    auto b = integer_list(range.substr(dots + 2), "--range");
                    if (a.size() != 1 || b.size() != 1) throw Error(ErrorCode::InvalidArgument, "--range must be first..last");
                    options.first = a[0];
                    options.last = b[0];
                }
                const auto report = gallery_check(gallery_name, params_of(joined_params, params), options);
                payload = emit_report(report, fmt);
                code = report.passed() ? 0 : 1;
            } else {
                const auto built = gallery_build(gallery_name, params_of(joined_params, params), gn);
                const CanonicalOptions copt{std::max<std::size_t>({12, built.via_scheme.domain_size(),
                                                                   built.via_oracle.domain_size()})};
                const bool equal = canonical_form(built.via_scheme, copt) == canonical_form(built.via_oracle, copt);
                payload = render_json({{"entry", gallery_name},
                                       {"n", gn},
                                       {"equal", equal},
                                       {"viaScheme", structure_to_json_value(built.via_scheme)},
                                       {"viaOracle", structure_to_json_value(built.via_oracle)}});
                code = equal ? 0 : 1;
            }
        } else if (*dec) {
            const auto fmt = format_of(report_format);
            const SpecPtr spec = spec_from();
            DecomposeOptions options;
            options.degree_cap = cap;
            options.held_out = held_out;
            try {
                payload = emit_report(bounded_decompose(spec, options), fmt);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::UnboundedDegree && e.code() != ErrorCode::VerificationFailed) throw;
                payload = render_json({{"sequence", spec_summary(*spec)},
                                       {"error", {{"code", code_name(e.code())}, {"message", e.what()}}}});
                o.err << "error[" << code_name(e.code()) << "]: " << e.what() << "\n";
                code = 1;
            }
        } else if (*pal) {
            const auto fmt = format_of(report_format);
            const auto report = paley_experiment(load_structure(pattern_path), integer_list(primes, "--primes"), samples);
            payload = emit_report(report, fmt);
            code = report.hom_verified ? 0 : 1;
        }
    } catch (const Error& e) {
        return {2, "", "error[" + std::string(code_name(e.code())) + "]: " + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {2, "", std::string("error[internal]: ") + e.what() + "\n"};
    }
    return {code, payload, o.err.str()};
}

} // namespace polyseq
