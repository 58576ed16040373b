#pragma once

#include "graded/errors.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace graded {

/// A finitely generated abelian group Z^free_rank x Z/m_1 x ... x Z/m_k,
/// written multiplicatively. Moduli are kept sorted ascending.
struct GroupSignature {
    std::size_t free_rank = 0;
    std::vector<std::int64_t> torsion;

    GroupSignature() = default;
    GroupSignature(std::size_t rank, std::vector<std::int64_t> moduli)
        : free_rank(rank), torsion(std::move(moduli)) {
        for (auto m : torsion)
            if (m < 2)
                throw MalformedInput("torsion modulus must be >= 2, got " + std::to_string(m));
        if (!std::is_sorted(torsion.begin(), torsion.end()))
            throw MalformedInput("torsion moduli must be sorted ascending");
    }

    std::size_t length() const { return free_rank + torsion.size(); }
    bool is_finite() const { return free_rank == 0; }

    /// Group order; only meaningful when is_finite().
    std::int64_t order() const {
        return std::accumulate(torsion.begin(), torsion.end(), std::int64_t{1},
                               std::multiplies<>());
    }

    friend bool operator==(const GroupSignature&, const GroupSignature&) = default;
};

/// Exponent vector of a group element. Torsion coordinates live in [0, m_i).
/// Ordering is lexicographic on the exponent vector.
struct GroupElement {
    std::vector<std::int64_t> exponents;

    GroupElement() = default;
    explicit GroupElement(std::vector<std::int64_t> e) : exponents(std::move(e)) {}
    GroupElement(std::initializer_list<std::int64_t> e) : exponents(e) {}

    std::size_t size() const { return exponents.size(); }
    std::int64_t operator[](std::size_t i) const { return exponents[i]; }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
    friend auto operator<=>(const GroupElement& a, const GroupElement& b) {
        return a.exponents <=> b.exponents;
    }
};

inline std::string to_string(const GroupElement& g) {
    std::string s = "(";
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(g[i]);
    }
    return s + ")";
}

inline bool conforms(const GroupElement& a, const GroupSignature& sig) {
    if (a.size() != sig.length())
        return false;
    for (std::size_t i = 0; i < sig.torsion.size(); ++i) {
        auto e = a[sig.free_rank + i];
        if (e < 0 || e >= sig.torsion[i])
            return false;
    }
    return true;
}

inline void require_conforms(const GroupElement& a, const GroupSignature& sig) {
    if (!conforms(a, sig))
        throw MalformedInput("group element " + to_string(a) + " does not conform to signature");
}

namespace detail {
inline std::int64_t reduce_mod(std::int64_t e, std::int64_t m) {
    auto r = e % m;
    return r < 0 ? r + m : r;
}
} // namespace detail

/// Brings arbitrary integer exponents into canonical form (torsion reduced).
inline GroupElement canonicalize(std::vector<std::int64_t> e, const GroupSignature& sig) {
    if (e.size() != sig.length())
        throw MalformedInput("exponent vector has length " + std::to_string(e.size()) +
                             ", signature expects " + std::to_string(sig.length()));
    for (std::size_t i = 0; i < sig.torsion.size(); ++i)
        e[sig.free_rank + i] = detail::reduce_mod(e[sig.free_rank + i], sig.torsion[i]);
    return GroupElement(std::move(e));
}

inline GroupElement identity(const GroupSignature& sig) {
    return GroupElement(std::vector<std::int64_t>(sig.length(), 0));
}

inline bool is_identity(const GroupElement& a) {
    return std::all_of(a.exponents.begin(), a.exponents.end(), [](auto e) { return e == 0; });
}

inline GroupElement compose(const GroupElement& a, const GroupElement& b, const GroupSignature& sig) {
    require_conforms(a, sig);
    require_conforms(b, sig);
    std::vector<std::int64_t> e(sig.length());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = a[i] + b[i];
    return canonicalize(std::move(e), sig);
}

inline GroupElement invert(const GroupElement& a, const GroupSignature& sig) {
    require_conforms(a, sig);
    std::vector<std::int64_t> e(sig.length());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = -a[i];
    return canonicalize(std::move(e), sig);
}

/// Every element of a finite group, in lexicographic order.
inline std::vector<GroupElement> enumerate_elements(const GroupSignature& sig) {
    if (!sig.is_finite())
        throw ParameterError("cannot enumerate an infinite group");
    std::vector<GroupElement> out;
    std::vector<std::int64_t> e(sig.length(), 0);
    while (true) {
        out.emplace_back(e);
        std::size_t i = e.size();
        while (i > 0) {
            --i;
            if (++e[i] < sig.torsion[i])
                break;
            e[i] = 0;
            if (i == 0)
                return out;
        }
        if (e.empty())
            return out;
    }
}

} // namespace graded
