#pragma once

#include "graded/connections.hpp"
#include "graded/decomposition.hpp"
#include "graded/graded_ring.hpp"
#include "graded/properties.hpp"
#include "graded/ring_io.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace graded {

inline constexpr int report_format_version = 1;

inline nlohmann::json to_json(const Subspace& s) {
    auto basis = nlohmann::json::array();
    for (const auto& v : s.basis())
        basis.push_back(to_json(v));
    return {{"dim", s.dim()}, {"basis", std::move(basis)}};
}

inline nlohmann::json to_json(const ViolationReport& rep) {
    auto list = nlohmann::json::array();
    for (const auto& v : rep.violations) {
        nlohmann::json item;
        item["kind"] = to_string(v.kind);
        item["indices"] = v.indices;
        item["witness"] = to_json(v.scalars);
        item["message"] = v.message;
        list.push_back(std::move(item));
    }
    return {{"ok", rep.ok()}, {"violations", std::move(list)}};
}

inline nlohmann::json support_json(const GradedRing& r) {
    const auto sigma = support(r);
    const auto sym = is_symmetric_support(r);
    auto elements = nlohmann::json::array();
    for (const auto& g : sigma)
        elements.push_back(to_json(g));
    return {{"size", sigma.size()},
            {"elements", std::move(elements)},
            {"symmetric", sym.symmetric},
            {"asymmetric_witness", sym.witness ? to_json(*sym.witness) : nlohmann::json(nullptr)}};
}

inline nlohmann::json to_json(const ConnectionPath& p) {
    auto elems = nlohmann::json::array();
    for (const auto& g : p.elements)
        elems.push_back(to_json(g));
    return {{"from", to_json(p.from)}, {"to", to_json(p.to)}, {"path", std::move(elems)}};
}

inline nlohmann::json to_json(const ConnectionClasses& cc) {
    auto out = nlohmann::json::array();
    for (const auto& c : cc.classes) {
        auto members = nlohmann::json::array();
        for (const auto& g : c.members)
            members.push_back(to_json(g));
        auto certs = nlohmann::json::array();
        for (const auto& [g, path] : c.certificates)
            certs.push_back(to_json(path));
        out.push_back({{"representative", to_json(c.representative)},
                       {"members", std::move(members)},
                       {"certificates", std::move(certs)}});
    }
    return out;
}

inline nlohmann::json to_json(const IdealDecomposition& d) {
    auto ideals = nlohmann::json::array();
    for (std::size_t c = 0; c < d.ideals.size(); ++c)
        ideals.push_back({{"class_index", c},
                          {"representative", to_json(d.classes.classes[c].representative)},
                          {"dim", d.ideals[c].dim()},
                          {"one_span_dim", d.one_spans[c].dim()},
                          {"homogeneous_dim", d.homog_sums[c].dim()},
                          {"basis", to_json(d.ideals[c])["basis"]}});
    return {{"ideals", std::move(ideals)},
            {"complement_U", to_json(d.complement)},
            {"complement_exact", d.complement_exact},
            {"ideals_graded", d.ideals_graded},
            {"covers", d.covers},
            {"pairwise_zero", d.pairwise_zero},
            {"orthogonal_ideals", d.orthogonal_ideals},
            {"coherent", d.coherent}};
}

inline nlohmann::json to_json(const TheoremResult& t) {
    return {{"verdict", to_string(t.verdict)},
            {"unmet_hypotheses", t.unmet},
            {"connected", t.connected},
            {"span_condition", t.span_condition}};
}

inline nlohmann::json to_json(const OracleResult& o) {
    return {{"verdict", to_string(o.verdict)},
            {"reason", o.reason},
            {"witness", o.witness ? to_json(*o.witness) : nlohmann::json(nullptr)},
            {"witness_ideal_dim", o.witness_ideal ? nlohmann::json(o.witness_ideal->dim()) : nlohmann::json(nullptr)}};
}

inline nlohmann::json to_json(const PropertyReport& p) {
    auto failures = nlohmann::json::array();
    for (const auto& f : p.coherent.failures)
        failures.push_back({{"g", to_json(f.g)}, {"h", to_json(f.h)}, {"gram", f.gram}});
    nlohmann::json counter = nullptr;
    if (p.sigma_multiplicative.counterexample)
        counter = {to_json(p.sigma_multiplicative.counterexample->first),
                   to_json(p.sigma_multiplicative.counterexample->second)};
    return {{"maximal_length", p.maximal_length},
            {"sigma_multiplicative", {{"ok", p.sigma_multiplicative.ok}, {"counterexample", counter}}},
            {"annihilator", to_json(p.annihilator)},
            {"symmetric_support",
             {{"ok", p.symmetric_support.symmetric},
              {"witness", p.symmetric_support.witness ? to_json(*p.symmetric_support.witness) : nlohmann::json(nullptr)}}},
            {"coherent",
             {{"ok", p.coherent.coherent}, {"span_condition", p.coherent.span_condition}, {"failures", failures}}},
            {"simple_by_theorem", to_json(p.simple_by_theorem)},
            {"simple_by_oracle", to_json(p.simple_by_oracle)}};
}

namespace detail {

inline std::string yes_no(const nlohmann::json& b) { return b.get<bool>() ? "yes" : "no"; }

inline std::string exps(const nlohmann::json& g) {
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i)
        s += (i ? "," : "") + std::to_string(g[i].get<std::int64_t>());
    return s + ")";
}

} // namespace detail

/// Human-readable rendering; depends on the JSON report only.
inline std::string render_text(const nlohmann::json& rep) {
    std::ostringstream os;
    os << "command: " << rep.value("command", "?") << "\n";
    if (rep.contains("input"))
        os << "input: " << rep["input"].get<std::string>() << "\n";
    if (rep.contains("ring"))
        os << "ring: dim " << rep["ring"]["dim"] << ", group Z^" << rep["ring"]["group"]["free_rank"]
           << " torsion " << rep["ring"]["group"]["torsion"].dump() << ", " << rep["ring"]["grams"] << " form(s)\n";
    if (rep.contains("validation")) {
        const auto& v = rep["validation"];
        os << "validation: " << (v["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
        for (const auto& item : v["violations"])
            os << "  [" << item["kind"].get<std::string>() << "] indices " << item["indices"].dump() << ": "
               << item["message"].get<std::string>() << "\n";
    }
    if (rep.contains("support")) {
        const auto& s = rep["support"];
        os << "support: " << s["size"] << " degree(s), symmetric: " << detail::yes_no(s["symmetric"]) << "\n";
    }
    if (rep.contains("classes")) {
        os << "connection classes: " << rep["classes"].size() << "\n";
        for (std::size_t c = 0; c < rep["classes"].size(); ++c) {
            const auto& cls = rep["classes"][c];
            os << "  [" << c << "] representative " << detail::exps(cls["representative"]) << ", "
               << cls["members"].size() << " member(s)\n";
        }
    }
    if (rep.contains("decomposition")) {
        const auto& d = rep["decomposition"];
        os << "decomposition: " << d["ideals"].size() << " ideal(s)\n";
        for (const auto& ideal : d["ideals"])
            os << "  ideal " << ideal["class_index"] << ": dim " << ideal["dim"] << " (identity part "
               << ideal["one_span_dim"] << ", homogeneous part " << ideal["homogeneous_dim"] << ")\n";
        os << "  complement U: dim " << d["complement_U"]["dim"]
           << ", exact: " << detail::yes_no(d["complement_exact"]) << "\n";
        os << "  covers: " << detail::yes_no(d["covers"]) << ", pairwise zero: " << detail::yes_no(d["pairwise_zero"])
           << ", orthogonal ideals: " << detail::yes_no(d["orthogonal_ideals"])
           << ", coherent: " << detail::yes_no(d["coherent"]) << "\n";
    }
    if (rep.contains("properties")) {
        const auto& p = rep["properties"];
        os << "properties:\n"
           << "  maximal length: " << detail::yes_no(p["maximal_length"]) << "\n"
           << "  sigma-multiplicative: " << detail::yes_no(p["sigma_multiplicative"]["ok"]) << "\n"
           << "  annihilator dim: " << p["annihilator"]["dim"] << "\n"
           << "  symmetric support: " << detail::yes_no(p["symmetric_support"]["ok"]) << "\n"
           << "  coherent: " << detail::yes_no(p["coherent"]["ok"]) << "\n"
           << "  simple (theorem): " << p["simple_by_theorem"]["verdict"].get<std::string>() << "\n"
           << "  simple (oracle): " << p["simple_by_oracle"]["verdict"].get<std::string>() << "\n";
    }
    if (rep.contains("simple")) {
        const auto& s = rep["simple"];
        os << "simple (theorem): " << s["simple_by_theorem"]["verdict"].get<std::string>() << "\n"
           << "simple (oracle): " << s["simple_by_oracle"]["verdict"].get<std::string>() << " - "
           << s["simple_by_oracle"]["reason"].get<std::string>() << "\n";
    }
    if (rep.contains("output"))
        os << "wrote " << rep["output"].get<std::string>() << " (dim " << rep["dim"] << ")\n";
    if (rep.contains("error"))
        os << "error: " << rep["error"].get<std::string>() << "\n";
    if (rep.contains("timing"))
        os << "time: " << rep["timing"]["seconds"] << " s\n";
    if (rep.contains("status")) {
        const auto& st = rep["status"];
        for (const auto& [name, ok] : st["checks"].items())
            os << "check " << name << ": " << (ok.get<bool>() ? "pass" : "FAIL") << "\n";
        os << "exit code: " << st["exit_code"] << "\n";
    }
    return os.str();
}

} // namespace graded
