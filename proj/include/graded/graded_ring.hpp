#pragma once

#include "graded/abelian_group.hpp"
#include "graded/errors.hpp"
#include "graded/exact_linalg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace graded {

/// Sparse vector as (index, nonzero value) pairs sorted by index.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

/// Products of basis elements: (i, j) -> e_i e_j. Absent pairs multiply to zero.
class StructureConstants {
public:
    /// Adds c * e_k to the product e_i e_j.
    void add(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
        if (c.is_zero())
            return;
        auto& entry = table_[{i, j}];
        auto it = std::lower_bound(entry.begin(), entry.end(), k,
                                   [](const auto& e, std::size_t key) { return e.first < key; });
        if (it != entry.end() && it->first == k) {
            it->second += c;
            if (it->second.is_zero())
                entry.erase(it);
        } else {
            entry.insert(it, {k, c});
        }
        if (entry.empty())
            table_.erase({i, j});
    }

    /// nullptr when e_i e_j = 0.
    const SparseVector* get(std::size_t i, std::size_t j) const {
        auto it = table_.find({i, j});
        return it == table_.end() ? nullptr : &it->second;
    }

    bool empty() const { return table_.empty(); }
    const auto& entries() const { return table_; }

    friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

private:
    std::map<std::pair<std::size_t, std::size_t>, SparseVector> table_;
};

/// Finite-dimensional associative algebra over Q(i) with a homogeneous basis
/// graded by a finitely generated abelian group, together with a finite
/// family of positive semidefinite Hermitian forms.
///
/// The record may be inconsistent on construction; validate() reports every
/// broken axiom. The analyses in the other headers assume a validated ring.
struct GradedRing {
    GroupSignature sig;
    std::vector<std::string> labels;
    std::vector<GroupElement> degrees;
    StructureConstants structure;
    std::vector<Matrix> grams;

    std::size_t dim() const { return labels.size(); }

    Vector basis_product(std::size_t i, std::size_t j) const {
        Vector out(dim());
        if (const auto* p = structure.get(i, j))
            for (const auto& [k, c] : *p)
                out[k] = c;
        return out;
    }

    friend bool operator==(const GradedRing&, const GradedRing&) = default;
};

/// Bilinear extension of the structure constants.
inline Vector multiply(const GradedRing& r, const Vector& u, const Vector& v) {
    const auto n = r.dim();
    if (u.size() != n || v.size() != n)
        throw MalformedInput("multiply: vector length does not match ring dimension");
    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i].is_zero())
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (v[j].is_zero())
                continue;
            if (const auto* p = r.structure.get(i, j)) {
                const Scalar f = u[i] * v[j];
                for (const auto& [k, c] : *p)
                    out[k] += f * c;
            }
        }
    }
    return out;
}

/// e_i v
inline Vector left_multiply(const GradedRing& r, std::size_t i, const Vector& v) {
    Vector out(r.dim());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero())
            continue;
        if (const auto* p = r.structure.get(i, j))
            for (const auto& [k, c] : *p)
                out[k] += v[j] * c;
    }
    return out;
}

/// v e_j
inline Vector right_multiply(const GradedRing& r, const Vector& v, std::size_t j) {
    Vector out(r.dim());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero())
            continue;
        if (const auto* p = r.structure.get(i, j))
            for (const auto& [k, c] : *p)
                out[k] += v[i] * c;
    }
    return out;
}

/// Basis indices grouped by degree, degrees in lexicographic order.
inline std::map<GroupElement, std::vector<std::size_t>> degree_components(const GradedRing& r) {
    std::map<GroupElement, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < r.dim(); ++i)
        out[r.degrees[i]].push_back(i);
    return out;
}

/// Non-identity degrees carried by at least one basis element, sorted.
inline std::vector<GroupElement> support(const GradedRing& r) {
    std::set<GroupElement> s;
    for (const auto& d : r.degrees)
        if (!is_identity(d))
            s.insert(d);
    return {s.begin(), s.end()};
}

inline std::vector<std::size_t> component_indices(const GradedRing& r, const GroupElement& g) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < r.dim(); ++i)
        if (r.degrees[i] == g)
            out.push_back(i);
    return out;
}

/// E_g: span of the basis vectors of degree g.
inline Subspace component(const GradedRing& r, const GroupElement& g) {
    std::vector<Vector> vs;
    for (auto i : component_indices(r, g))
        vs.push_back(unit_vector(r.dim(), i));
    return span(vs, r.dim());
}

/// Orthogonal projection onto E_g along the other components.
inline Vector project(const GradedRing& r, const Vector& v, const GroupElement& g) {
    Vector out(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i)
        if (r.degrees[i] == g)
            out[i] = v[i];
    return out;
}

inline bool has_nonzero_product(const GradedRing& r) { return !r.structure.empty(); }

enum class ViolationKind { grading, associativity, orthogonality, psd, hausdorff, malformed };

inline const char* to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::grading: return "grading";
    case ViolationKind::associativity: return "associativity";
    case ViolationKind::orthogonality: return "orthogonality";
    case ViolationKind::psd: return "psd";
    case ViolationKind::hausdorff: return "hausdorff";
    case ViolationKind::malformed: return "malformed";
    }
    return "unknown";
}

/// One broken axiom with a concrete witness. Index conventions:
///   grading        (i, j, k): e_i e_j has a nonzero e_k coefficient of the wrong degree
///   associativity  (i, j, k): (e_i e_j) e_k != e_i (e_j e_k); scalars = difference
///   orthogonality  (a, i, j): Gram a pairs basis i and j of different degrees
///   psd            (a): scalars = x with <x, x>_a < 0
///   hausdorff      (): scalars = nonzero x with p_a(x) = 0 for every a
///   malformed      free-form, see message
struct Violation {
    ViolationKind kind;
    std::vector<std::size_t> indices;
    std::vector<Scalar> scalars;
    std::string message;
};

struct ViolationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool malformed() const { return count(ViolationKind::malformed) > 0; }
    std::size_t count(ViolationKind k) const {
        return static_cast<std::size_t>(std::count_if(violations.begin(), violations.end(),
                                                      [k](const Violation& v) { return v.kind == k; }));
    }
};

namespace detail {

inline constexpr std::size_t max_witnesses_per_kind = 64;

inline void check_shape(const GradedRing& r, ViolationReport& rep) {
    auto bad = [&](std::vector<std::size_t> idx, std::string msg) {
        rep.violations.push_back({ViolationKind::malformed, std::move(idx), {}, std::move(msg)});
    };
    const auto n = r.dim();
    if (n == 0)
        bad({}, "ring has no basis elements");
    if (r.degrees.size() != n)
        bad({}, "degree list has " + std::to_string(r.degrees.size()) + " entries for " +
                    std::to_string(n) + " basis elements");
    for (std::size_t i = 0; i < r.degrees.size(); ++i)
        if (!conforms(r.degrees[i], r.sig))
            bad({i}, "degree of basis element " + std::to_string(i) + " does not conform to the group signature");
    for (const auto& [key, vec] : r.structure.entries()) {
        if (key.first >= n || key.second >= n)
            bad({key.first, key.second}, "structure constant index out of range");
        for (const auto& [k, c] : vec)
            if (k >= n)
                bad({key.first, key.second, k}, "structure constant target index out of range");
    }
    if (r.grams.empty())
        bad({}, "at least one Gram matrix is required");
    for (std::size_t a = 0; a < r.grams.size(); ++a) {
        const auto& g = r.grams[a];
        if (g.rows() != n || g.cols() != n)
            bad({a}, "Gram matrix " + std::to_string(a) + " is not " + std::to_string(n) + "x" + std::to_string(n));
        else if (!g.is_hermitian())
            bad({a}, "Gram matrix " + std::to_string(a) + " is not Hermitian");
    }
}

} // namespace detail

/// Exhaustively checks the graded-ring axioms. Shape problems short-circuit
/// the remaining checks since they cannot be evaluated safely.
inline ViolationReport validate(const GradedRing& r) {
    ViolationReport rep;
    detail::check_shape(r, rep);
    if (!rep.ok())
        return rep;
    const auto n = r.dim();
    std::map<ViolationKind, std::size_t> reported;
    auto push = [&](Violation v) {
        if (reported[v.kind]++ < detail::max_witnesses_per_kind)
            rep.violations.push_back(std::move(v));
    };

    // grading compatibility
    for (const auto& [key, vec] : r.structure.entries()) {
        const auto [i, j] = key;
        const auto expected = compose(r.degrees[i], r.degrees[j], r.sig);
        for (const auto& [k, c] : vec)
            if (r.degrees[k] != expected)
                push({ViolationKind::grading, {i, j, k}, {c},
                      "e_" + std::to_string(i) + " e_" + std::to_string(j) + " has a component along e_" +
                          std::to_string(k) + " of degree " + to_string(r.degrees[k]) + ", expected " +
                          to_string(expected)});
    }

    // associativity on basis triples
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto* ij = r.structure.get(i, j);
            for (std::size_t k = 0; k < n; ++k) {
                const auto* jk = r.structure.get(j, k);
                if (!ij && !jk)
                    continue;
                Vector lhs(n), rhs(n);
                if (ij)
                    for (const auto& [m, c] : *ij)
                        if (const auto* mk = r.structure.get(m, k))
                            for (const auto& [t, d] : *mk)
                                lhs[t] += c * d;
                if (jk)
                    for (const auto& [m, c] : *jk)
                        if (const auto* im = r.structure.get(i, m))
                            for (const auto& [t, d] : *im)
                                rhs[t] += c * d;
                if (lhs == rhs)
                    continue;
                Vector diff(n);
                for (std::size_t t = 0; t < n; ++t)
                    diff[t] = lhs[t] - rhs[t];
                push({ViolationKind::associativity, {i, j, k}, std::move(diff),
                      "(e_" + std::to_string(i) + " e_" + std::to_string(j) + ") e_" + std::to_string(k) +
                          " != e_" + std::to_string(i) + " (e_" + std::to_string(j) + " e_" +
                          std::to_string(k) + ")"});
            }
        }

    // orthogonality of distinct homogeneous components
    for (std::size_t a = 0; a < r.grams.size(); ++a)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (r.degrees[i] != r.degrees[j] && !r.grams[a](i, j).is_zero())
                    push({ViolationKind::orthogonality, {a, i, j}, {r.grams[a](i, j)},
                          "Gram " + std::to_string(a) + " pairs e_" + std::to_string(i) + " and e_" +
                              std::to_string(j) + " across different degrees"});

    // positive semidefiniteness
    for (std::size_t a = 0; a < r.grams.size(); ++a) {
        auto res = psd_check(r.grams[a]);
        if (!res)
            push({ViolationKind::psd, {a}, *res.witness,
                  "Gram " + std::to_string(a) + " is indefinite: <x,x> = " + res.witness_value.to_string()});
    }

    // separation: only x = 0 has p_a(x) = 0 for all a
    std::vector<Vector> stacked;
    for (const auto& g : r.grams)
        for (std::size_t i = 0; i < n; ++i)
            stacked.push_back(g.row_vector(i));
    const auto kernel = nullspace(Matrix::from_rows(stacked, n));
    if (!kernel.is_zero())
        push({ViolationKind::hausdorff, {}, kernel.basis().front(),
              "the Gram family has a joint kernel of dimension " + std::to_string(kernel.dim())});

    return rep;
}

/// The graded subring carried by S, with the induced grading and the ambient
/// forms restricted to it. S must be graded and closed under multiplication.
/// Basis: a homogeneous echelon basis of S, degrees in lexicographic order.
inline GradedRing subring(const GradedRing& r, const Subspace& s) {
    if (s.ambient_dim() != r.dim())
        throw MalformedInput("subring: subspace dimension mismatch");
    std::vector<Vector> basis;
    std::vector<GroupElement> degs;
    for (const auto& [g, idx] : degree_components(r)) {
        const auto piece = intersect(s, component(r, g));
        for (const auto& v : piece.basis()) {
            basis.push_back(v);
            degs.push_back(g);
        }
    }
    if (basis.size() != s.dim())
        throw PreconditionError("subring: subspace is not graded");
    GradedRing out;
    out.sig = r.sig;
    out.degrees = degs;
    for (const auto& v : basis) {
        std::optional<std::size_t> unit;
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) {
                ++nonzero;
                unit = i;
            }
        if (nonzero == 1 && v[*unit] == Scalar(1))
            out.labels.push_back(r.labels[*unit]);
        else
            out.labels.push_back("span" + std::to_string(out.labels.size()));
    }
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const auto p = multiply(r, basis[a], basis[b]);
            if (is_zero(p))
                continue;
            const auto c = coordinates(basis, p);
            if (!c)
                throw PreconditionError("subring: subspace is not closed under multiplication");
            for (std::size_t k = 0; k < c->size(); ++k)
                out.structure.add(a, b, k, (*c)[k]);
        }
    for (const auto& g : r.grams) {
        Matrix m(basis.size(), basis.size());
        for (std::size_t a = 0; a < basis.size(); ++a)
            for (std::size_t b = 0; b < basis.size(); ++b)
                m(a, b) = pairing(basis[a], basis[b], g);
        out.grams.push_back(std::move(m));
    }
    return out;
}

} // namespace graded
