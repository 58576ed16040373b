#pragma once

#include "graded/connections.hpp"
#include "graded/decomposition.hpp"
#include "graded/generators.hpp"
#include "graded/graded_ring.hpp"
#include "graded/properties.hpp"
#include "graded/report.hpp"
#include "graded/ring_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace graded::cli {

/// Exit codes: analysis ran and every requested check passed / some check
/// failed / the input could not be used.
enum ExitCode : int { ok = 0, check_failed = 1, malformed_input = 2 };

struct Options {
    std::string report_format = "text";
    std::string out_path;
    bool timing = false;
    std::size_t samples = 16;
    std::uint64_t seed = 1;
};

namespace detail {

inline nlohmann::json ring_summary(const GradedRing& r) {
    return {{"dim", r.dim()},
            {"group", {{"free_rank", r.sig.free_rank}, {"torsion", r.sig.torsion}}},
            {"grams", r.grams.size()}};
}

inline int finish(nlohmann::json& rep, nlohmann::json checks, int code) {
    if (code == ExitCode::ok)
        for (const auto& [name, passed] : checks.items())
            if (!passed.get<bool>())
                code = ExitCode::check_failed;
    rep["status"] = {{"checks", std::move(checks)}, {"exit_code", code}};
    return code;
}

inline nlohmann::json malformed_validation(const std::string& message) {
    return {{"ok", false},
            {"violations",
             nlohmann::json::array({{{"kind", "malformed"},
                                     {"indices", nlohmann::json::array()},
                                     {"witness", nlohmann::json::array()},
                                     {"message", message}}})}};
}

/// Loads, validates and runs one analysis command; fills `rep`, returns the exit code.
inline int analyze(const std::string& command, const std::string& file, const Options& opt, nlohmann::json& rep) {
    rep["format_version"] = report_format_version;
    rep["command"] = command;
    RingSpecFile spec;
    try {
        spec = load_ring_spec(file);
    } catch (const MalformedInput& e) {
        rep["validation"] = malformed_validation(e.what());
        return finish(rep, nlohmann::json::object(), ExitCode::malformed_input);
    }
    const auto& ring = spec.ring;
    const auto violations = validate(ring);
    rep["validation"] = to_json(violations);
    if (violations.malformed())
        return finish(rep, nlohmann::json::object(), ExitCode::malformed_input);
    rep["ring"] = ring_summary(ring);
    nlohmann::json checks = nlohmann::json::object();
    checks["valid_ring"] = violations.ok();
    if (!violations.ok() || command == "validate")
        return finish(rep, std::move(checks), ExitCode::ok);

    try {
        if (command == "classes" || command == "decompose") {
            rep["support"] = support_json(ring);
            std::optional<IdealDecomposition> dec;
            ConnectionClasses classes;
            if (command == "decompose") {
                dec = build_decomposition(ring);
                classes = dec->classes;
            } else {
                classes = connection_classes(ring);
            }
            rep["classes"] = to_json(classes);
            bool certified = true;
            bool inverse_closed = true;
            for (const auto& c : classes.classes) {
                for (const auto& [g, path] : c.certificates)
                    certified = certified && path.to == g && verify_certificate(ring, path);
                for (const auto& g : c.members) {
                    const auto inv = invert(g, ring.sig);
                    const auto where = classes.class_of(inv);
                    if (where && !c.contains(inv))
                        inverse_closed = false;
                }
            }
            checks["certificates_verify"] = certified;
            checks["classes_closed_under_inverse"] = inverse_closed;
            if (dec) {
                rep["decomposition"] = to_json(*dec);
                checks["ideals_are_graded_ideals"] = dec->ideals_graded;
                checks["covers_when_complement_exact"] = dec->covers || !dec->complement_exact;
                checks["pairwise_zero"] = dec->pairwise_zero;
                checks["orthogonal_when_coherent"] = !dec->coherent || dec->orthogonal_ideals;
            }
        } else if (command == "properties") {
            rep["support"] = support_json(ring);
            const auto props = analyze_properties(ring, opt.samples, opt.seed);
            rep["properties"] = to_json(props);
            checks["theorem_oracle_agree"] = props.consistent();
        } else if (command == "simple") {
            PropertyReport p;
            p.simple_by_theorem = graded_simple_theorem(ring);
            p.simple_by_oracle = graded_simple_oracle(ring, opt.samples, opt.seed);
            rep["simple"] = {{"simple_by_theorem", to_json(p.simple_by_theorem)},
                             {"simple_by_oracle", to_json(p.simple_by_oracle)}};
            checks["theorem_oracle_agree"] = p.consistent();
        }
    } catch (const TheoremViolation& e) {
        rep["error"] = e.what();
        return finish(rep, std::move(checks), ExitCode::check_failed);
    }
    return finish(rep, std::move(checks), ExitCode::ok);
}

inline void emit(const nlohmann::json& rep, const Options& opt, std::ostream& out) {
    const auto text = opt.report_format == "json" ? rep.dump(2) + "\n" : render_text(rep);
    if (opt.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(opt.out_path);
    if (!f)
        throw Error(opt.out_path + ": cannot open for writing");
    f << text;
}

inline std::vector<Scalar> parse_weights(const std::vector<std::string>& raw) {
    std::vector<Scalar> out;
    for (const auto& w : raw)
        out.push_back(Scalar::parse(w));
    if (out.empty())
        out.emplace_back(1);
    return out;
}

} // namespace detail

/// Entry point of the `graded` tool. Reports go to `out` (or --out), usage
/// errors to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact analysis of group-graded rings with semidefinite forms", "graded"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opt;
    app.add_option("--report", opt.report_format, "Report format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", opt.out_path, "Write the report to this file instead of stdout");
    app.add_flag("--timing", opt.timing, "Include wall-clock timing in the report");

    std::string file;
    auto add_analysis = [&](const char* name, const char* help, bool oracle) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("file", file, "Ring-spec JSON file")->required();
        if (oracle) {
            sub->add_option("--oracle-samples", opt.samples, "Random identity-degree probes for the simplicity oracle")
                ->envname("GRADED_SAMPLES");
            sub->add_option("--seed", opt.seed, "Seed for the simplicity oracle")->envname("GRADED_SEED");
        }
        return sub;
    };
    std::vector<CLI::App*> analyses = {
        add_analysis("validate", "Check the graded-ring axioms", false),
        add_analysis("classes", "Connection classes of the support with certificates", false),
        add_analysis("decompose", "Graded ideal decomposition", false),
        add_analysis("properties", "Maximal length, multiplicativity, annihilator, coherence, simplicity", true),
        add_analysis("simple", "Graded simplicity by theorem and by brute-force oracle", true),
    };

    auto* gen = app.add_subcommand("gen", "Write a generated ring-spec file");
    gen->require_subcommand(1);
    std::string output;
    BandedRingParams banded;
    std::vector<std::string> weights;
    auto* gen_banded_cmd = gen->add_subcommand("banded", "Banded matrix-unit ring");
    gen_banded_cmd->add_option("--n", banded.n, "Band size N")->required();
    gen_banded_cmd->add_option("--r", banded.r, "Band count r")->required();
    gen_banded_cmd->add_option("--weights", weights, "Form weights t >= 1, comma separated")->delimiter(',');
    gen_banded_cmd->add_option("--primes", banded.primes, "Primes x_(n,t) in row-major (n,t) order")->delimiter(',');
    gen_banded_cmd->add_option("-o,--output", output, "Output file")->required();

    std::vector<std::int64_t> torsion;
    auto* gen_group_cmd = gen->add_subcommand("group", "Group algebra of a finite abelian group");
    gen_group_cmd->add_option("--torsion", torsion, "Moduli m1,m2,...")->delimiter(',');
    gen_group_cmd->add_option("-o,--output", output, "Output file")->required();

    std::string left, right;
    auto* gen_sum_cmd = gen->add_subcommand("sum", "Direct sum of two ring-spec files");
    gen_sum_cmd->add_option("a", left, "First summand")->required();
    gen_sum_cmd->add_option("b", right, "Second summand")->required();
    gen_sum_cmd->add_option("-o,--output", output, "Output file")->required();

    std::uint64_t gen_seed = 0;
    RandomRingParams random_params;
    auto* gen_random_cmd = gen->add_subcommand("random", "Seeded random valid ring");
    gen_random_cmd->add_option("--seed", gen_seed, "Seed")->required()->envname("GRADED_SEED");
    gen_random_cmd->add_option("--max-dim", random_params.max_dim, "Dimension budget");
    gen_random_cmd->add_option("-o,--output", output, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return ExitCode::ok;
        }
        err << "error: " << e.what() << "\n";
        return ExitCode::malformed_input;
    }

    const auto start = std::chrono::steady_clock::now();
    nlohmann::json rep;
    int code = ExitCode::ok;
    try {
        bool handled = false;
        for (auto* sub : analyses)
            if (sub->parsed()) {
                code = detail::analyze(sub->get_name(), file, opt, rep);
                handled = true;
            }
        if (!handled) {
            rep["format_version"] = report_format_version;
            GradedRing ring;
            nlohmann::json meta;
            if (gen_banded_cmd->parsed()) {
                rep["command"] = "gen banded";
                banded.weights = detail::parse_weights(weights);
                ring = gen_banded(banded);
                auto w = nlohmann::json::array();
                for (const auto& s : banded.weights)
                    w.push_back(s.to_string());
                meta = {{"generator", "banded"}, {"n", banded.n}, {"r", banded.r}, {"weights", w}};
            } else if (gen_group_cmd->parsed()) {
                rep["command"] = "gen group";
                std::sort(torsion.begin(), torsion.end());
                ring = gen_group_algebra(GroupSignature(0, torsion));
                meta = {{"generator", "group"}, {"torsion", torsion}};
            } else if (gen_sum_cmd->parsed()) {
                rep["command"] = "gen sum";
                const auto a = load_ring_spec(left);
                const auto b = load_ring_spec(right);
                for (const auto* part : {&a, &b}) {
                    const auto v = validate(part->ring);
                    if (!v.ok()) {
                        rep["validation"] = to_json(v);
                        rep["error"] = "summand is not a valid graded ring";
                        detail::emit(rep, opt, out);
                        return v.malformed() ? ExitCode::malformed_input : ExitCode::check_failed;
                    }
                }
                ring = gen_direct_sum(a.ring, b.ring);
                meta = {{"generator", "sum"}, {"summands", {a.metadata, b.metadata}}};
            } else if (gen_random_cmd->parsed()) {
                rep["command"] = "gen random";
                ring = gen_random(gen_seed, random_params);
                meta = {{"generator", "random"}, {"seed", gen_seed}, {"max_dim", random_params.max_dim}};
            }
            save_ring_spec(output, ring, meta);
            rep["output"] = output;
            rep["dim"] = ring.dim();
        }
    } catch (const MalformedInput& e) {
        rep["error"] = e.what();
        code = ExitCode::malformed_input;
    } catch (const ParameterError& e) {
        rep["error"] = e.what();
        code = ExitCode::malformed_input;
    } catch (const Error& e) {
        rep["error"] = e.what();
        code = ExitCode::check_failed;
    }
    if (opt.timing)
        rep["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    try {
        detail::emit(rep, opt, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return ExitCode::malformed_input;
    }
    return code;
}

} // namespace graded::cli
