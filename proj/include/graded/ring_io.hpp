#pragma once

#include "graded/errors.hpp"
#include "graded/graded_ring.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

namespace graded {

inline constexpr int ring_spec_format_version = 1;

/// A ring-spec file: the ring plus free-form metadata.
struct RingSpecFile {
    GradedRing ring;
    nlohmann::json metadata = nlohmann::json::object();
};

namespace detail {

inline std::string scalar_text(const nlohmann::json& v, const std::string& field) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return v.dump();
    throw MalformedInput(field + ": expected a scalar string such as \"p/q\" or \"p/q+r/s*i\"");
}

inline Scalar parse_scalar_field(const nlohmann::json& v, const std::string& field) {
    const auto text = scalar_text(v, field);
    try {
        return Scalar::parse(text);
    } catch (const MalformedInput&) {
        throw MalformedInput(field + ": malformed scalar \"" + text + "\"");
    }
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& path) {
    if (!obj.is_object() || !obj.contains(key))
        throw MalformedInput(path + "/" + key + ": missing field");
    return obj.at(key);
}

inline std::int64_t as_int(const nlohmann::json& v, const std::string& field) {
    if (!v.is_number_integer())
        throw MalformedInput(field + ": expected an integer");
    return v.get<std::int64_t>();
}

inline std::size_t as_index(const nlohmann::json& v, const std::string& field) {
    const auto i = as_int(v, field);
    if (i < 0)
        throw MalformedInput(field + ": index must be nonnegative");
    return static_cast<std::size_t>(i);
}

inline Matrix parse_gram(const nlohmann::json& g, std::size_t n, const std::string& path) {
    if (g.is_array()) {
        Matrix m(g.size(), g.empty() ? 0 : g.front().size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            const auto rp = path + "/" + std::to_string(i);
            if (!g[i].is_array() || g[i].size() != m.cols())
                throw MalformedInput(rp + ": ragged or non-array Gram row");
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) = parse_scalar_field(g[i][j], rp + "/" + std::to_string(j));
        }
        return m;
    }
    if (g.is_object() && g.contains("sparse")) {
        const auto& entries = g.at("sparse");
        if (!entries.is_array())
            throw MalformedInput(path + "/sparse: expected an array");
        Matrix m(n, n);
        for (std::size_t e = 0; e < entries.size(); ++e) {
            const auto ep = path + "/sparse/" + std::to_string(e);
            const auto i = as_index(require(entries[e], "i", ep), ep + "/i");
            const auto j = as_index(require(entries[e], "j", ep), ep + "/j");
            if (i >= n || j >= n)
                throw MalformedInput(ep + ": Gram index out of range");
            m(i, j) = parse_scalar_field(require(entries[e], "value", ep), ep + "/value");
        }
        return m;
    }
    throw MalformedInput(path + ": Gram must be a dense array of rows or {\"sparse\": [...]}");
}

} // namespace detail

/// Parses a ring-spec document. Errors name the offending JSON field (as a
/// JSON pointer) or, for syntax errors, the line and column.
inline RingSpecFile parse_ring_spec(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedInput(std::string("JSON syntax error: ") + e.what());
    }
    if (!doc.is_object())
        throw MalformedInput("/: ring spec must be a JSON object");
    const auto version = detail::as_int(detail::require(doc, "format_version", ""), "/format_version");
    if (version != ring_spec_format_version)
        throw MalformedInput("/format_version: unsupported version " + std::to_string(version));

    RingSpecFile out;
    auto& r = out.ring;
    const auto& group = detail::require(doc, "group", "");
    const auto rank = detail::as_int(detail::require(group, "free_rank", "/group"), "/group/free_rank");
    if (rank < 0)
        throw MalformedInput("/group/free_rank: must be nonnegative");
    std::vector<std::int64_t> torsion;
    const auto& tors = detail::require(group, "torsion", "/group");
    if (!tors.is_array())
        throw MalformedInput("/group/torsion: expected an array");
    for (std::size_t i = 0; i < tors.size(); ++i)
        torsion.push_back(detail::as_int(tors[i], "/group/torsion/" + std::to_string(i)));
    try {
        r.sig = GroupSignature(static_cast<std::size_t>(rank), std::move(torsion));
    } catch (const MalformedInput& e) {
        throw MalformedInput(std::string("/group/torsion: ") + e.what());
    }

    const auto& basis = detail::require(doc, "basis", "");
    if (!basis.is_array())
        throw MalformedInput("/basis: expected an array of labels");
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (!basis[i].is_string())
            throw MalformedInput("/basis/" + std::to_string(i) + ": label must be a string");
        r.labels.push_back(basis[i].get<std::string>());
    }
    const auto n = r.labels.size();

    const auto& degrees = detail::require(doc, "degrees", "");
    if (!degrees.is_array())
        throw MalformedInput("/degrees: expected an array of exponent vectors");
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        const auto dp = "/degrees/" + std::to_string(i);
        if (!degrees[i].is_array())
            throw MalformedInput(dp + ": expected an integer array");
        std::vector<std::int64_t> e;
        for (std::size_t c = 0; c < degrees[i].size(); ++c)
            e.push_back(detail::as_int(degrees[i][c], dp + "/" + std::to_string(c)));
        r.degrees.emplace_back(std::move(e));
    }

    const auto& structure = detail::require(doc, "structure", "");
    if (!structure.is_array())
        throw MalformedInput("/structure: expected an array of {i, j, k, value}");
    for (std::size_t e = 0; e < structure.size(); ++e) {
        const auto ep = "/structure/" + std::to_string(e);
        const auto& entry = structure[e];
        const auto i = detail::as_index(detail::require(entry, "i", ep), ep + "/i");
        const auto j = detail::as_index(detail::require(entry, "j", ep), ep + "/j");
        const auto k = detail::as_index(detail::require(entry, "k", ep), ep + "/k");
        r.structure.add(i, j, k, detail::parse_scalar_field(detail::require(entry, "value", ep), ep + "/value"));
    }

    const auto& grams = detail::require(doc, "grams", "");
    if (!grams.is_array())
        throw MalformedInput("/grams: expected an array");
    for (std::size_t g = 0; g < grams.size(); ++g)
        r.grams.push_back(detail::parse_gram(grams[g], n, "/grams/" + std::to_string(g)));

    if (doc.contains("metadata"))
        out.metadata = doc.at("metadata");
    return out;
}

inline RingSpecFile load_ring_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw MalformedInput(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_ring_spec(buf.str());
    } catch (const MalformedInput& e) {
        throw MalformedInput(path + ": " + e.what());
    }
}

inline nlohmann::json to_json(const GroupElement& g) { return g.exponents; }

inline nlohmann::json to_json(const Vector& v) {
    auto out = nlohmann::json::array();
    for (const auto& s : v)
        out.push_back(s.to_string());
    return out;
}

/// Canonical serialization: structure entries in (i, j, k) order, Gram
/// matrices in sparse form listing nonzero entries row by row.
inline nlohmann::json ring_to_json(const GradedRing& r, const nlohmann::json& metadata = nlohmann::json::object()) {
    nlohmann::json doc;
    doc["format_version"] = ring_spec_format_version;
    doc["group"] = {{"free_rank", r.sig.free_rank}, {"torsion", r.sig.torsion}};
    doc["basis"] = r.labels;
    auto degrees = nlohmann::json::array();
    for (const auto& d : r.degrees)
        degrees.push_back(to_json(d));
    doc["degrees"] = std::move(degrees);
    auto structure = nlohmann::json::array();
    for (const auto& [key, vec] : r.structure.entries())
        for (const auto& [k, c] : vec)
            structure.push_back({{"i", key.first}, {"j", key.second}, {"k", k}, {"value", c.to_string()}});
    doc["structure"] = std::move(structure);
    auto grams = nlohmann::json::array();
    for (const auto& g : r.grams) {
        auto entries = nlohmann::json::array();
        for (std::size_t i = 0; i < g.rows(); ++i)
            for (std::size_t j = 0; j < g.cols(); ++j)
                if (!g(i, j).is_zero())
                    entries.push_back({{"i", i}, {"j", j}, {"value", g(i, j).to_string()}});
        grams.push_back({{"sparse", std::move(entries)}});
    }
    doc["grams"] = std::move(grams);
    doc["metadata"] = metadata;
    return doc;
}

inline void save_ring_spec(const std::string& path, const GradedRing& r,
                           const nlohmann::json& metadata = nlohmann::json::object()) {
    std::ofstream out(path);
    if (!out)
        throw Error(path + ": cannot open for writing");
    out << ring_to_json(r, metadata).dump(2) << '\n';
}

} // namespace graded
