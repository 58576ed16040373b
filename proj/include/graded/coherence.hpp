#pragma once

#include "graded/exact_linalg.hpp"
#include "graded/graded_ring.hpp"

#include <vector>

namespace graded {

namespace detail {

/// All nonzero basis products e_a e_b with deg a = h and deg b = h^-1.
inline std::vector<Vector> inverse_pair_products(const GradedRing& r, const GroupElement& h) {
    std::vector<Vector> out;
    const auto left = component_indices(r, h);
    const auto right = component_indices(r, invert(h, r.sig));
    for (auto a : left)
        for (auto b : right) {
            auto p = r.basis_product(a, b);
            if (!is_zero(p))
                out.push_back(std::move(p));
        }
    return out;
}

inline bool pairings_vanish(const std::vector<Vector>& xs, const std::vector<Vector>& ys, const Matrix& gram) {
    for (const auto& x : xs)
        for (const auto& y : ys)
            if (!pairing(x, y, gram).is_zero())
                return false;
    return true;
}

} // namespace detail

struct CoherenceFailure {
    GroupElement g;
    GroupElement h;
    std::size_t gram;
};

struct CoherenceResult {
    bool coherent = false;
    bool span_condition = false;
    std::vector<CoherenceFailure> failures; // pairing-condition failures
    explicit operator bool() const { return coherent; }
};

/// Coherent 1-homogeneous space:
///   (a) E_1 equals the span of all E_g E_{g^-1}, g in Sigma;
///   (b) for all g, h in Sigma and every form, <E_g E_{g^-1}, E_h E_{h^-1}>
///       vanishes identically iff <E_g, E_h E_{h^-1} E_g> does.
inline CoherenceResult is_coherent(const GradedRing& r) {
    CoherenceResult out;
    const auto sigma = support(r);
    SubspaceBuilder products(r.dim());
    std::vector<std::vector<Vector>> pair_products;
    std::vector<std::vector<std::size_t>> comp;
    for (const auto& g : sigma) {
        pair_products.push_back(detail::inverse_pair_products(r, g));
        comp.push_back(component_indices(r, g));
        for (const auto& p : pair_products.back())
            products.insert(p);
    }
    out.span_condition = Subspace::from_builder(products) == component(r, identity(r.sig));

    for (std::size_t gi = 0; gi < sigma.size(); ++gi) {
        std::vector<Vector> eg;
        for (auto c : comp[gi])
            eg.push_back(unit_vector(r.dim(), c));
        for (std::size_t hi = 0; hi < sigma.size(); ++hi) {
            // E_h E_{h^-1} E_g
            std::vector<Vector> triple;
            for (const auto& p : pair_products[hi])
                for (auto c : comp[gi]) {
                    auto t = right_multiply(r, p, c);
                    if (!is_zero(t))
                        triple.push_back(std::move(t));
                }
            for (std::size_t a = 0; a < r.grams.size(); ++a) {
                const bool lhs = detail::pairings_vanish(pair_products[gi], pair_products[hi], r.grams[a]);
                const bool rhs = detail::pairings_vanish(eg, triple, r.grams[a]);
                if (lhs != rhs)
                    out.failures.push_back({sigma[gi], sigma[hi], a});
            }
        }
    }
    out.coherent = out.span_condition && out.failures.empty();
    return out;
}

} // namespace graded
