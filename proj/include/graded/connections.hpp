#pragma once

#include "graded/abelian_group.hpp"
#include "graded/errors.hpp"
#include "graded/graded_ring.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace graded {

/// A connection g_1, ..., g_n from `from` to `to`: g_1 = from, every g_i and
/// every proper prefix product lies in the support or its inverse, and the
/// full product is `to` or its inverse.
struct ConnectionPath {
    GroupElement from;
    GroupElement to;
    std::vector<GroupElement> elements;

    friend bool operator==(const ConnectionPath&, const ConnectionPath&) = default;
};

struct ConnectionClass {
    GroupElement representative;
    std::vector<GroupElement> members; // sorted, includes the representative
    std::map<GroupElement, ConnectionPath> certificates; // member -> path from representative

    bool contains(const GroupElement& g) const {
        return std::binary_search(members.begin(), members.end(), g);
    }
};

/// The partition of the support into connection classes, ordered by
/// representative (the smallest member of each class).
struct ConnectionClasses {
    std::vector<ConnectionClass> classes;

    std::size_t size() const { return classes.size(); }

    /// Index of the class holding g, or empty when g is not in the support.
    std::optional<std::size_t> class_of(const GroupElement& g) const {
        for (std::size_t c = 0; c < classes.size(); ++c)
            if (classes[c].contains(g))
                return c;
        return std::nullopt;
    }
};

/// Multiplication table of Sigma u Sigma^-1 restricted to itself. Products
/// leaving the set are recorded as npos. Elements are sorted, so iterating
/// indices visits candidates in lexicographic order.
class ConnectionGraph {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit ConnectionGraph(const GradedRing& r) : sig_(r.sig), support_(graded::support(r)) {
        std::set<GroupElement> all(support_.begin(), support_.end());
        for (const auto& g : support_)
            all.insert(invert(g, sig_));
        elements_.assign(all.begin(), all.end());
        const auto m = elements_.size();
        table_.assign(m * m, npos);
        inverse_.assign(m, npos);
        for (std::size_t a = 0; a < m; ++a) {
            inverse_[a] = index_of(invert(elements_[a], sig_));
            for (std::size_t b = 0; b < m; ++b)
                table_[a * m + b] = index_of(compose(elements_[a], elements_[b], sig_));
        }
    }

    const std::vector<GroupElement>& support() const { return support_; }
    const std::vector<GroupElement>& elements() const { return elements_; }
    bool in_support(const GroupElement& g) const {
        return std::binary_search(support_.begin(), support_.end(), g);
    }

    std::size_t index_of(const GroupElement& g) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), g);
        return (it != elements_.end() && *it == g) ? static_cast<std::size_t>(it - elements_.begin()) : npos;
    }

    std::size_t product(std::size_t a, std::size_t b) const { return table_[a * elements_.size() + b]; }
    std::size_t inverse(std::size_t a) const { return inverse_[a]; }

    /// Breadth-first search over prefix products. Returns the shortest
    /// connection, ties broken lexicographically on the g_i sequence.
    std::optional<ConnectionPath> search(const GroupElement& g, const GroupElement& h) const {
        if (!in_support(g) || !in_support(h))
            throw PreconditionError("connected: " + to_string(in_support(g) ? h : g) + " is not in the support");
        const auto gi = index_of(g);
        const auto hi = index_of(h);
        const auto hinv = inverse_[hi];
        if (gi == hi || gi == hinv)
            return ConnectionPath{g, h, {g}};
        const auto m = elements_.size();
        std::vector<std::size_t> parent(m, npos), via(m, npos);
        std::vector<bool> seen(m, false);
        seen[gi] = true;
        std::deque<std::size_t> queue{gi};
        auto rebuild = [&](std::size_t state, std::size_t last) {
            std::vector<GroupElement> steps{elements_[last]};
            for (auto s = state; s != gi; s = parent[s])
                steps.push_back(elements_[via[s]]);
            steps.push_back(g);
            std::reverse(steps.begin(), steps.end());
            return ConnectionPath{g, h, std::move(steps)};
        };
        while (!queue.empty()) {
            const auto state = queue.front();
            queue.pop_front();
            for (std::size_t x = 0; x < m; ++x) {
                const auto next = product(state, x);
                if (next == npos)
                    continue;
                if (next == hi || next == hinv)
                    return rebuild(state, x);
                if (!seen[next]) {
                    seen[next] = true;
                    parent[next] = state;
                    via[next] = x;
                    queue.push_back(next);
                }
            }
        }
        return std::nullopt;
    }

private:
    GroupSignature sig_;
    std::vector<GroupElement> support_;
    std::vector<GroupElement> elements_;
    std::vector<std::size_t> table_;
    std::vector<std::size_t> inverse_;
};

/// A connection from g to h when g ~ h, otherwise empty. Both must lie in
/// the support.
inline std::optional<ConnectionPath> connected(const GradedRing& r, const GroupElement& g, const GroupElement& h) {
    return ConnectionGraph(r).search(g, h);
}

/// Re-derives every clause of the connection definition from the stored
/// sequence alone; never throws.
inline bool verify_certificate(const GradedRing& r, const ConnectionPath& path) {
    if (path.elements.empty())
        return false;
    if (!conforms(path.from, r.sig) || !conforms(path.to, r.sig))
        return false;
    for (const auto& e : path.elements)
        if (!conforms(e, r.sig))
            return false;
    const auto sigma = support(r);
    auto in_sigma = [&](const GroupElement& x) { return std::binary_search(sigma.begin(), sigma.end(), x); };
    auto in_sym = [&](const GroupElement& x) { return in_sigma(x) || in_sigma(invert(x, r.sig)); };
    if (!in_sigma(path.from) || !in_sigma(path.to))
        return false;
    if (path.elements.front() != path.from)
        return false;
    if (!std::all_of(path.elements.begin(), path.elements.end(), in_sym))
        return false;
    GroupElement prefix = path.elements.front();
    for (std::size_t i = 1; i < path.elements.size(); ++i) {
        if (!in_sym(prefix))
            return false;
        prefix = compose(prefix, path.elements[i], r.sig);
    }
    return prefix == path.to || prefix == invert(path.to, r.sig);
}

/// The quotient of the support by the connection relation, with a
/// certificate for every member.
inline ConnectionClasses connection_classes(const GradedRing& r) {
    const ConnectionGraph graph(r);
    ConnectionClasses out;
    const auto& sigma = graph.support();
    std::vector<bool> assigned(sigma.size(), false);
    for (std::size_t s = 0; s < sigma.size(); ++s) {
        if (assigned[s])
            continue;
        assigned[s] = true;
        ConnectionClass cls;
        cls.representative = sigma[s];
        cls.members.push_back(sigma[s]);
        cls.certificates.emplace(sigma[s], ConnectionPath{sigma[s], sigma[s], {sigma[s]}});
        for (std::size_t t = s + 1; t < sigma.size(); ++t) {
            if (assigned[t])
                continue;
            if (auto path = graph.search(sigma[s], sigma[t])) {
                assigned[t] = true;
                cls.members.push_back(sigma[t]);
                cls.certificates.emplace(sigma[t], std::move(*path));
            }
        }
        out.classes.push_back(std::move(cls));
    }
    return out;
}

struct SymmetryResult {
    bool symmetric = true;
    std::optional<GroupElement> witness; // g in Sigma with g^-1 not in Sigma
    explicit operator bool() const { return symmetric; }
};

inline SymmetryResult is_symmetric_support(const GradedRing& r) {
    const auto sigma = support(r);
    for (const auto& g : sigma)
        if (!std::binary_search(sigma.begin(), sigma.end(), invert(g, r.sig)))
            return {false, g};
    return {};
}

} // namespace graded
