#pragma once

// Test-side reference computations. Deliberately naive and independent of the
// library's echelon machinery and BFS so that library results can be checked
// against them.

#include "graded/graded.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using graded::GradedRing;
using graded::GroupElement;
using graded::Scalar;
using graded::Vector;

/// Rank by plain Gaussian elimination on a copy.
inline std::size_t row_rank(std::vector<Vector> rows) {
    if (rows.empty())
        return 0;
    const auto cols = rows.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c].is_zero())
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c].is_zero())
                continue;
            const auto f = rows[i][c] / rows[r][c];
            for (std::size_t j = c; j < cols; ++j)
                rows[i][j] -= f * rows[r][j];
        }
        ++r;
    }
    return r;
}

inline bool in_span(const std::vector<Vector>& rows, const Vector& v) {
    auto more = rows;
    more.push_back(v);
    return row_rank(more) == row_rank(rows);
}

/// Product of two vectors straight from the structure-constant table.
inline Vector product(const GradedRing& r, const Vector& u, const Vector& v) {
    Vector out(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i) {
        if (u[i].is_zero())
            continue;
        for (std::size_t j = 0; j < r.dim(); ++j) {
            if (v[j].is_zero())
                continue;
            if (const auto* p = r.structure.get(i, j))
                for (const auto& [k, c] : *p)
                    out[k] += u[i] * v[j] * c;
        }
    }
    return out;
}

inline Scalar form(const Vector& x, const Vector& y, const graded::Matrix& g) {
    Scalar s;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            s += x[i] * g(i, j) * y[j].conj();
    return s;
}

/// Non-identity degrees attained by basis elements, by direct enumeration.
inline std::set<GroupElement> support_set(const GradedRing& r) {
    std::set<GroupElement> s;
    for (const auto& d : r.degrees)
        if (!graded::is_identity(d))
            s.insert(d);
    return s;
}

/// Reachability fixpoint over prefix products: g ~ h iff starting from {g}
/// and repeatedly multiplying by elements of Sigma u Sigma^-1 (staying inside
/// Sigma u Sigma^-1 for prefixes) some product lands in {h, h^-1}.
inline bool reachable(const GradedRing& r, const GroupElement& g, const GroupElement& h) {
    const auto sigma = support_set(r);
    std::set<GroupElement> steps(sigma.begin(), sigma.end());
    for (const auto& s : sigma)
        steps.insert(graded::invert(s, r.sig));
    const auto h_inv = graded::invert(h, r.sig);
    if (g == h || g == h_inv)
        return true;
    std::set<GroupElement> reached{g};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& p : std::vector<GroupElement>(reached.begin(), reached.end()))
            for (const auto& s : steps) {
                const auto q = graded::compose(p, s, r.sig);
                if (q == h || q == h_inv)
                    return true;
                if (steps.contains(q) && reached.insert(q).second)
                    grew = true;
            }
    }
    return false;
}

/// Two-sided closure check: S E and E S stay in S (on basis pairs).
inline bool is_two_sided_ideal(const GradedRing& r, const std::vector<Vector>& basis) {
    for (const auto& v : basis)
        for (std::size_t i = 0; i < r.dim(); ++i) {
            const auto e = graded::unit_vector(r.dim(), i);
            if (!in_span(basis, product(r, v, e)) || !in_span(basis, product(r, e, v)))
                return false;
        }
    return true;
}

/// Sum of the homogeneous pieces of S equals S.
inline bool is_graded(const GradedRing& r, const std::vector<Vector>& basis) {
    for (const auto& v : basis) {
        std::set<GroupElement> degs(r.degrees.begin(), r.degrees.end());
        for (const auto& g : degs) {
            Vector piece(r.dim());
            for (std::size_t k = 0; k < r.dim(); ++k)
                if (r.degrees[k] == g)
                    piece[k] = v[k];
            if (!in_span(basis, piece))
                return false;
        }
    }
    return true;
}

/// Length of a shortest connection from g to h by layered expansion, or 0
/// when none exists.
inline std::size_t shortest_connection(const GradedRing& r, const GroupElement& g, const GroupElement& h) {
    const auto sigma = support_set(r);
    std::set<GroupElement> steps(sigma.begin(), sigma.end());
    for (const auto& s : sigma)
        steps.insert(graded::invert(s, r.sig));
    const auto h_inv = graded::invert(h, r.sig);
    if (g == h || g == h_inv)
        return 1;
    std::set<GroupElement> seen{g}, layer{g};
    for (std::size_t len = 2; !layer.empty(); ++len) {
        std::set<GroupElement> next;
        for (const auto& p : layer)
            for (const auto& s : steps) {
                const auto q = graded::compose(p, s, r.sig);
                if (q == h || q == h_inv)
                    return len;
                if (steps.contains(q) && seen.insert(q).second)
                    next.insert(q);
            }
        layer = std::move(next);
    }
    return 0;
}

/// The same ring with basis element i moved to position perm[i].
inline GradedRing permuted(const GradedRing& r, const std::vector<std::size_t>& perm) {
    const auto n = r.dim();
    GradedRing out;
    out.sig = r.sig;
    out.labels.resize(n);
    out.degrees.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.labels[perm[i]] = r.labels[i];
        out.degrees[perm[i]] = r.degrees[i];
    }
    for (const auto& [key, vec] : r.structure.entries())
        for (const auto& [k, c] : vec)
            out.structure.add(perm[key.first], perm[key.second], perm[k], c);
    for (const auto& g : r.grams) {
        graded::Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(perm[i], perm[j]) = g(i, j);
        out.grams.push_back(std::move(m));
    }
    return out;
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = i;
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline Vector random_vector(std::mt19937_64& rng, std::size_t n, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> d(lo, hi);
    Vector v(n);
    for (auto& x : v)
        x = Scalar(d(rng));
    return v;
}

} // namespace oracle
