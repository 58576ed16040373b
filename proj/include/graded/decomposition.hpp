#pragma once

#include "graded/coherence.hpp"
#include "graded/connections.hpp"
#include "graded/errors.hpp"
#include "graded/exact_linalg.hpp"
#include "graded/graded_ring.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace graded {

namespace detail {

inline void require_block(const GradedRing& r, std::vector<GroupElement> members) {
    std::sort(members.begin(), members.end());
    for (const auto& c : connection_classes(r).classes)
        if (c.members == members)
            return;
    throw PreconditionError("the given degree set is not a connection class of the ring");
}

inline Subspace one_span_unchecked(const GradedRing& r, const std::vector<GroupElement>& members) {
    SubspaceBuilder b(r.dim());
    for (const auto& h : members)
        for (auto& p : inverse_pair_products(r, h))
            b.insert(std::move(p));
    return Subspace::from_builder(b);
}

inline Subspace homog_sum_unchecked(const GradedRing& r, const std::vector<GroupElement>& members) {
    SubspaceBuilder b(r.dim());
    for (std::size_t i = 0; i < r.dim(); ++i)
        if (std::find(members.begin(), members.end(), r.degrees[i]) != members.end())
            b.insert(unit_vector(r.dim(), i));
    return Subspace::from_builder(b);
}

/// True when every basis product between the two subspaces vanishes, in
/// both orders.
inline bool products_vanish(const GradedRing& r, const Subspace& a, const Subspace& b) {
    for (const auto& u : a.basis())
        for (const auto& v : b.basis())
            if (!is_zero(multiply(r, u, v)) || !is_zero(multiply(r, v, u)))
                return false;
    return true;
}

inline bool mutually_orthogonal(const GradedRing& r, const Subspace& a, const Subspace& b) {
    for (const auto& g : r.grams)
        for (const auto& u : a.basis())
            for (const auto& v : b.basis())
                if (!pairing(u, v, g).is_zero())
                    return false;
    return true;
}

} // namespace detail

/// E_{1,[g]}: span of E_h E_{h^-1} over h in the class.
inline Subspace class_one_span(const GradedRing& r, const std::vector<GroupElement>& members) {
    detail::require_block(r, members);
    return detail::one_span_unchecked(r, members);
}

/// V_[g]: direct sum of the homogeneous components with degree in the class.
inline Subspace class_homog_sum(const GradedRing& r, const std::vector<GroupElement>& members) {
    detail::require_block(r, members);
    return detail::homog_sum_unchecked(r, members);
}

/// True iff S E and E S lie in S, and S is spanned by its homogeneous parts.
inline bool is_graded_ideal(const GradedRing& r, const Subspace& s) {
    if (s.ambient_dim() != r.dim())
        throw MalformedInput("is_graded_ideal: subspace dimension mismatch");
    const auto b = s.builder();
    const auto comps = degree_components(r);
    for (const auto& v : s.basis()) {
        for (const auto& [g, idx] : comps)
            if (!b.contains(project(r, v, g)))
                return false;
        for (std::size_t i = 0; i < r.dim(); ++i) {
            if (!b.contains(left_multiply(r, i, v)) || !b.contains(right_multiply(r, v, i)))
                return false;
        }
    }
    return true;
}

/// S S within S.
inline bool is_subring(const GradedRing& r, const Subspace& s) {
    const auto b = s.builder();
    for (const auto& u : s.basis())
        for (const auto& v : s.basis())
            if (!b.contains(multiply(r, u, v)))
                return false;
    return true;
}

namespace detail {
inline Subspace class_ideal_unchecked(const GradedRing& r, const std::vector<GroupElement>& members) {
    auto ideal = sum(one_span_unchecked(r, members), homog_sum_unchecked(r, members));
    if (!is_graded_ideal(r, ideal))
        throw TheoremViolation("class ideal of " + to_string(members.front()) +
                               " is not a graded ideal; the input ring is not a valid graded ring");
    return ideal;
}
} // namespace detail

/// E_[g] = E_{1,[g]} + V_[g], checked to be a graded ideal.
inline Subspace class_ideal(const GradedRing& r, const std::vector<GroupElement>& members) {
    detail::require_block(r, members);
    return detail::class_ideal_unchecked(r, members);
}

/// span{E_g E_{g^-1} : g in Sigma}
inline Subspace inverse_product_span(const GradedRing& r) {
    return detail::one_span_unchecked(r, support(r));
}

struct ComplementResult {
    Subspace complement;
    bool exact = false; // complement + span of E_g E_{g^-1} == E_1
};

/// The joint orthogonal complement in E_1 of the span of all E_g E_{g^-1}.
/// It may fail to be a linear complement when the forms degenerate on E_1;
/// `exact` reports that.
inline ComplementResult complement_U(const GradedRing& r) {
    const auto e1 = component(r, identity(r.sig));
    const auto products = inverse_product_span(r);
    auto u = joint_orthogonal_complement(products, e1, r.grams);
    const bool exact = sum(products, u) == e1;
    return {std::move(u), exact};
}

struct IdealDecomposition {
    ConnectionClasses classes;
    std::vector<Subspace> ideals;     // E_[g], parallel to classes.classes
    std::vector<Subspace> one_spans;  // E_{1,[g]}
    std::vector<Subspace> homog_sums; // V_[g]
    Subspace complement;
    bool complement_exact = false;
    bool ideals_graded = false; // every E_[g] passed is_graded_ideal
    bool covers = false;
    bool pairwise_zero = false;
    bool orthogonal_ideals = false;
    bool coherent = false;

    /// The structural guarantees that must hold on every valid ring. Covering
    /// is only promised when U really complements the product span in E_1.
    bool consistent() const {
        return ideals_graded && (covers || !complement_exact) && pairwise_zero && (!coherent || orthogonal_ideals);
    }
};

/// Computes classes, class ideals and the complement and records every
/// structural flag without throwing.
inline IdealDecomposition build_decomposition(const GradedRing& r) {
    IdealDecomposition d;
    d.coherent = is_coherent(r).coherent;
    d.classes = connection_classes(r);
    d.ideals_graded = true;
    for (const auto& c : d.classes.classes) {
        d.one_spans.push_back(detail::one_span_unchecked(r, c.members));
        d.homog_sums.push_back(detail::homog_sum_unchecked(r, c.members));
        d.ideals.push_back(sum(d.one_spans.back(), d.homog_sums.back()));
        if (!is_graded_ideal(r, d.ideals.back()))
            d.ideals_graded = false;
    }
    auto [u, exact] = complement_U(r);
    d.complement = std::move(u);
    d.complement_exact = exact;

    auto total = d.complement;
    for (const auto& ideal : d.ideals)
        total = sum(total, ideal);
    d.covers = total.is_full();

    d.pairwise_zero = true;
    d.orthogonal_ideals = true;
    for (std::size_t a = 0; a < d.ideals.size(); ++a)
        for (std::size_t b = a + 1; b < d.ideals.size(); ++b) {
            if (d.pairwise_zero && !detail::products_vanish(r, d.ideals[a], d.ideals[b]))
                d.pairwise_zero = false;
            if (d.orthogonal_ideals && !detail::mutually_orthogonal(r, d.ideals[a], d.ideals[b]))
                d.orthogonal_ideals = false;
        }
    return d;
}

/// build_decomposition, throwing TheoremViolation when a structural
/// guarantee fails: a class ideal that is not a graded ideal, ideals and an
/// exact complement not spanning the ring, nonzero products across classes,
/// or non-orthogonal ideals in a coherent ring.
inline IdealDecomposition decompose(const GradedRing& r) {
    auto d = build_decomposition(r);
    if (!d.ideals_graded)
        throw TheoremViolation("a class ideal is not a graded ideal; the input ring is not a valid graded ring");
    if (d.complement_exact && !d.covers)
        throw TheoremViolation("complement and class ideals do not span the ring");
    if (!d.pairwise_zero)
        throw TheoremViolation("ideals of distinct connection classes multiply to nonzero");
    if (d.coherent && !d.orthogonal_ideals)
        throw TheoremViolation("ideals of a coherent ring are not mutually orthogonal");
    return d;
}

} // namespace graded
