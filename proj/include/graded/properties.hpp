#pragma once

#include "graded/coherence.hpp"
#include "graded/connections.hpp"
#include "graded/decomposition.hpp"
#include "graded/exact_linalg.hpp"
#include "graded/graded_ring.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace graded {

/// E_1 != 0 and every support component is one-dimensional.
inline bool is_maximal_length(const GradedRing& r) {
    bool has_identity = false;
    for (const auto& [g, idx] : degree_components(r)) {
        if (is_identity(g))
            has_identity = true;
        else if (idx.size() != 1)
            return false;
    }
    return has_identity;
}

struct SigmaMultiplicativeResult {
    bool ok = true;
    std::optional<std::pair<GroupElement, GroupElement>> counterexample;
    explicit operator bool() const { return ok; }
};

/// For g in Sigma, h in Sigma u {1} with gh in Sigma, requires
/// E_g E_h + E_h E_g != 0. Pairs are scanned with g then h in lexicographic
/// order; the first failure is reported.
inline SigmaMultiplicativeResult is_sigma_multiplicative(const GradedRing& r) {
    const auto sigma = support(r);
    auto in_sigma = [&](const GroupElement& x) { return std::binary_search(sigma.begin(), sigma.end(), x); };
    std::vector<GroupElement> partners(sigma);
    partners.push_back(identity(r.sig));
    std::sort(partners.begin(), partners.end());
    const auto comps = degree_components(r);
    auto indices = [&](const GroupElement& g) -> const std::vector<std::size_t>& {
        static const std::vector<std::size_t> none;
        auto it = comps.find(g);
        return it == comps.end() ? none : it->second;
    };
    for (const auto& g : sigma)
        for (const auto& h : partners) {
            if (!in_sigma(compose(g, h, r.sig)))
                continue;
            bool nonzero = false;
            for (auto a : indices(g)) {
                for (auto b : indices(h))
                    if (r.structure.get(a, b) || r.structure.get(b, a)) {
                        nonzero = true;
                        break;
                    }
                if (nonzero)
                    break;
            }
            if (!nonzero)
                return {false, std::make_pair(g, h)};
        }
    return {};
}

/// {v : v E = 0 and E v = 0}
inline Subspace annihilator(const GradedRing& r) {
    const auto n = r.dim();
    // row keys: (side, j, k) -> coefficient vector over v's coordinates
    std::map<std::tuple<int, std::size_t, std::size_t>, Vector> rows;
    for (const auto& [key, vec] : r.structure.entries()) {
        const auto [i, j] = key;
        for (const auto& [k, c] : vec) {
            // (v e_j)_k = sum_i v_i c_ij^k
            auto& right = rows[{0, j, k}];
            if (right.empty())
                right.resize(n);
            right[i] += c;
            // (e_i v)_k = sum_j v_j c_ij^k
            auto& left = rows[{1, i, k}];
            if (left.empty())
                left.resize(n);
            left[j] += c;
        }
    }
    std::vector<Vector> m;
    for (auto& [key, row] : rows)
        if (!is_zero(row))
            m.push_back(std::move(row));
    if (m.empty())
        return Subspace::full(n);
    return nullspace(Matrix::from_rows(m, n));
}

/// Smallest graded ideal containing v: seeded with the homogeneous
/// components of v, closed under left and right multiplication by the basis.
inline Subspace ideal_closure(const GradedRing& r, const Vector& v) {
    if (v.size() != r.dim())
        throw MalformedInput("ideal_closure: vector length does not match ring dimension");
    SubspaceBuilder b(r.dim());
    std::deque<Vector> work;
    for (const auto& [g, idx] : degree_components(r)) {
        auto piece = project(r, v, g);
        if (!is_zero(piece) && b.insert(piece))
            work.push_back(std::move(piece));
    }
    while (!work.empty()) {
        const auto w = std::move(work.front());
        work.pop_front();
        for (std::size_t i = 0; i < r.dim(); ++i) {
            for (auto p : {left_multiply(r, i, w), right_multiply(r, w, i)}) {
                if (is_zero(p))
                    continue;
                if (b.insert(p))
                    work.push_back(std::move(p));
            }
        }
        if (b.dim() == r.dim())
            break;
    }
    return Subspace::from_builder(b);
}

enum class Verdict { yes, no, hypotheses_not_met };
enum class OracleVerdict { yes, no, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::yes: return "true";
    case Verdict::no: return "false";
    case Verdict::hypotheses_not_met: return "hypotheses-not-met";
    }
    return "unknown";
}

inline const char* to_string(OracleVerdict v) {
    switch (v) {
    case OracleVerdict::yes: return "true";
    case OracleVerdict::no: return "false";
    case OracleVerdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

struct TheoremResult {
    Verdict verdict = Verdict::hypotheses_not_met;
    std::vector<std::string> unmet; // names of failed hypotheses
    bool connected = false;         // a single connection class
    bool span_condition = false;    // E_1 spanned by the E_g E_{g^-1}
};

/// Simplicity characterization for Sigma-multiplicative rings of maximal
/// length with zero annihilator and symmetric nonempty support: simple iff
/// the support is a single connection class and E_1 is spanned by the
/// products E_g E_{g^-1}.
inline TheoremResult graded_simple_theorem(const GradedRing& r) {
    TheoremResult out;
    const auto sigma = support(r);
    if (!has_nonzero_product(r))
        out.unmet.push_back("nonzero_product");
    if (sigma.empty())
        out.unmet.push_back("nonempty_support");
    if (!is_symmetric_support(r))
        out.unmet.push_back("symmetric_support");
    if (!is_maximal_length(r))
        out.unmet.push_back("maximal_length");
    if (!is_sigma_multiplicative(r))
        out.unmet.push_back("sigma_multiplicative");
    if (!annihilator(r).is_zero())
        out.unmet.push_back("zero_annihilator");
    out.connected = connection_classes(r).size() == 1;
    out.span_condition = inverse_product_span(r) == component(r, identity(r.sig));
    if (!out.unmet.empty())
        return out;
    out.verdict = (out.connected && out.span_condition) ? Verdict::yes : Verdict::no;
    return out;
}

struct OracleResult {
    OracleVerdict verdict = OracleVerdict::inconclusive;
    std::optional<Vector> witness;        // generator of a proper nonzero graded ideal
    std::optional<Subspace> witness_ideal;
    std::string reason;
};

/// Elements of E_1 killed on both sides by every homogeneous basis element
/// of non-identity degree. Any graded ideal contained in E_1 lies here.
inline Subspace identity_block_annihilator(const GradedRing& r) {
    const auto n = r.dim();
    const auto e1 = component_indices(r, identity(r.sig));
    std::vector<Vector> conditions;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_identity(r.degrees[j]))
            continue;
        for (int side = 0; side < 2; ++side) {
            // coefficient of v_a in (e_a e_j) or (e_j e_a), one row per output coordinate
            std::map<std::size_t, Vector> by_output;
            for (std::size_t a = 0; a < e1.size(); ++a) {
                const auto* p = side == 0 ? r.structure.get(e1[a], j) : r.structure.get(j, e1[a]);
                if (!p)
                    continue;
                for (const auto& [k, c] : *p) {
                    auto& row = by_output[k];
                    if (row.empty())
                        row.resize(e1.size());
                    row[a] += c;
                }
            }
            for (auto& [k, row] : by_output)
                if (!is_zero(row))
                    conditions.push_back(std::move(row));
        }
    }
    std::vector<Vector> lifted;
    const auto coeffs = conditions.empty() ? Subspace::full(e1.size())
                                           : nullspace(Matrix::from_rows(conditions, e1.size()));
    for (const auto& c : coeffs.basis()) {
        Vector v(n);
        for (std::size_t a = 0; a < e1.size(); ++a)
            v[e1[a]] = c[a];
        lifted.push_back(std::move(v));
    }
    return span(lifted, n);
}

/// Brute-force graded simplicity check from the definition. Refutes by
/// exhibiting a generator whose ideal closure is proper and nonzero; tested
/// generators are every homogeneous basis vector, a basis of
/// identity_block_annihilator(), and `samples` seeded random vectors of E_1.
/// Proves simplicity only when every nonzero graded ideal must contain a
/// tested generator: all support components are one-dimensional and no
/// nonzero graded ideal can sit inside a multi-dimensional E_1.
inline OracleResult graded_simple_oracle(const GradedRing& r, std::size_t samples, std::uint64_t seed) {
    OracleResult out;
    const auto n = r.dim();
    if (!has_nonzero_product(r)) {
        out.verdict = OracleVerdict::no;
        out.reason = "all products vanish";
        return out;
    }
    auto refute = [&](const Vector& v, const std::string& why) {
        auto closure = ideal_closure(r, v);
        if (closure.is_zero() || closure.is_full())
            return false;
        out.verdict = OracleVerdict::no;
        out.witness = v;
        out.witness_ideal = std::move(closure);
        out.reason = why;
        return true;
    };
    for (std::size_t i = 0; i < n; ++i)
        if (refute(unit_vector(n, i), "basis element " + r.labels[i] + " generates a proper graded ideal"))
            return out;

    const auto blocked = identity_block_annihilator(r);
    for (const auto& v : blocked.basis())
        if (refute(v, "an identity-degree element annihilated by the support generates a proper graded ideal"))
            return out;

    const auto e1 = component_indices(r, identity(r.sig));
    if (e1.size() > 1) {
        std::mt19937_64 rng(seed);
        for (std::size_t s = 0; s < samples; ++s) {
            Vector v(n);
            for (auto idx : e1)
                v[idx] = static_cast<long>(rng() % 7) - 3;
            if (is_zero(v))
                continue;
            if (refute(v, "a sampled identity-degree element generates a proper graded ideal"))
                return out;
        }
    }

    bool lines = true;
    for (const auto& [g, idx] : degree_components(r))
        if (!is_identity(g) && idx.size() != 1)
            lines = false;
    if (lines && (blocked.is_zero() || e1.size() <= 1)) {
        out.verdict = OracleVerdict::yes;
        out.reason = "every nonzero graded ideal contains a tested generator, and each generates the whole ring";
    } else {
        out.verdict = OracleVerdict::inconclusive;
        out.reason = lines ? "identity component has annihilated elements that sampling cannot exhaust"
                           : "a support component has dimension > 1, its lines cannot be enumerated";
    }
    return out;
}

struct PropertyReport {
    bool maximal_length = false;
    SigmaMultiplicativeResult sigma_multiplicative;
    Subspace annihilator;
    SymmetryResult symmetric_support;
    CoherenceResult coherent;
    TheoremResult simple_by_theorem;
    OracleResult simple_by_oracle;

    /// Theorem and oracle never disagree when both are conclusive.
    bool consistent() const {
        if (simple_by_theorem.verdict == Verdict::hypotheses_not_met ||
            simple_by_oracle.verdict == OracleVerdict::inconclusive)
            return true;
        return (simple_by_theorem.verdict == Verdict::yes) == (simple_by_oracle.verdict == OracleVerdict::yes);
    }
};

inline PropertyReport analyze_properties(const GradedRing& r, std::size_t samples, std::uint64_t seed) {
    PropertyReport p;
    p.maximal_length = is_maximal_length(r);
    p.sigma_multiplicative = is_sigma_multiplicative(r);
    p.annihilator = annihilator(r);
    p.symmetric_support = is_symmetric_support(r);
    p.coherent = is_coherent(r);
    p.simple_by_theorem = graded_simple_theorem(r);
    p.simple_by_oracle = graded_simple_oracle(r, samples, seed);
    return p;
}

} // namespace graded
