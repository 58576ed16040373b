#pragma once

#include "graded/abelian_group.hpp"
#include "graded/connections.hpp"
#include "graded/errors.hpp"
#include "graded/graded_ring.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace graded {

inline bool is_prime(std::int64_t p) {
    if (p < 2)
        return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

inline std::vector<std::int64_t> first_primes(std::size_t count) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; out.size() < count; ++p)
        if (is_prime(p))
            out.push_back(p);
    return out;
}

/// Banded matrix-unit ring: bands t = 1..r, each an N x N block of matrix
/// units a((n,t),(m,t)). x_{n,t} = primes[n * r + t] (0-based, row-major in
/// (n, t)); empty primes selects the first N*r primes.
struct BandedRingParams {
    std::size_t n = 2;
    std::size_t r = 1;
    std::vector<std::int64_t> primes;
    std::vector<Scalar> weights{Scalar(1)};
};

inline std::string unit_label(std::size_t n, std::size_t m, std::size_t t) {
    return "a((" + std::to_string(n + 1) + "," + std::to_string(t + 1) + "),(" + std::to_string(m + 1) + "," +
           std::to_string(t + 1) + "))";
}

/// Basis index of a((n,t),(m,t)) in rings built by gen_matrix_units.
inline std::size_t unit_index(std::size_t size, std::size_t n, std::size_t m, std::size_t t) {
    return t * size * size + n * size + m;
}

/// Matrix units graded through an arbitrary map phi: (n, t) -> G, with
/// deg a((n,t),(m,t)) = phi(n,t)^-1 phi(m,t). phi is indexed n * bands + t.
/// Forms are weight * identity, one per weight.
inline GradedRing gen_matrix_units(std::size_t size, std::size_t bands, const GroupSignature& sig,
                                   const std::vector<GroupElement>& phi, const std::vector<Scalar>& weights) {
    if (size == 0 || bands == 0)
        throw ParameterError("band size and band count must be positive");
    if (phi.size() != size * bands)
        throw ParameterError("phi must have one value per (n, t)");
    if (weights.empty())
        throw ParameterError("at least one weight is required");
    for (const auto& p : phi)
        if (!conforms(p, sig))
            throw ParameterError("phi value " + to_string(p) + " does not conform to the signature");
    GradedRing ring;
    ring.sig = sig;
    const auto dim = bands * size * size;
    ring.labels.resize(dim);
    ring.degrees.resize(dim);
    for (std::size_t t = 0; t < bands; ++t)
        for (std::size_t n = 0; n < size; ++n)
            for (std::size_t m = 0; m < size; ++m) {
                const auto idx = unit_index(size, n, m, t);
                ring.labels[idx] = unit_label(n, m, t);
                ring.degrees[idx] = compose(invert(phi[n * bands + t], sig), phi[m * bands + t], sig);
            }
    for (std::size_t t = 0; t < bands; ++t)
        for (std::size_t n = 0; n < size; ++n)
            for (std::size_t m = 0; m < size; ++m)
                for (std::size_t q = 0; q < size; ++q)
                    ring.structure.add(unit_index(size, n, m, t), unit_index(size, m, q, t),
                                       unit_index(size, n, q, t), Scalar(1));
    for (const auto& w : weights)
        ring.grams.push_back(Matrix::identity(dim, w));
    return ring;
}

/// The banded ring over the rationals, graded by the free abelian group on
/// the primes in use: x_{n,t} becomes the generator whose index is the rank
/// of its prime among the primes used.
inline GradedRing gen_banded(const BandedRingParams& params) {
    if (params.n == 0 || params.r == 0)
        throw ParameterError("N and r must be at least 1");
    auto primes = params.primes.empty() ? first_primes(params.n * params.r) : params.primes;
    if (primes.size() != params.n * params.r)
        throw ParameterError("prime map needs exactly N*r entries, got " + std::to_string(primes.size()));
    for (auto p : primes)
        if (!is_prime(p))
            throw ParameterError(std::to_string(p) + " is not prime");
    std::vector<std::int64_t> sorted(primes);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParameterError("prime map is not injective");
    if (params.weights.empty())
        throw ParameterError("at least one weight is required");
    for (const auto& w : params.weights)
        if (!w.is_real() || w.re() < 1)
            throw ParameterError("weights must be rationals >= 1, got " + w.to_string());

    const GroupSignature sig(primes.size(), {});
    std::vector<GroupElement> phi;
    for (auto p : primes) {
        std::vector<std::int64_t> e(sig.length(), 0);
        e[static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), p) - sorted.begin())] = 1;
        phi.emplace_back(std::move(e));
    }
    return gen_matrix_units(params.n, params.r, sig, phi, params.weights);
}

/// Group algebra of a finite abelian group graded by the group itself.
inline GradedRing gen_group_algebra(const GroupSignature& sig) {
    if (!sig.is_finite())
        throw ParameterError("group algebra needs a finite group (free rank 0)");
    const auto elements = enumerate_elements(sig);
    GradedRing ring;
    ring.sig = sig;
    for (const auto& g : elements) {
        ring.labels.push_back("g" + to_string(g));
        ring.degrees.push_back(g);
    }
    auto index = [&](const GroupElement& g) {
        return static_cast<std::size_t>(std::lower_bound(elements.begin(), elements.end(), g) - elements.begin());
    };
    for (std::size_t a = 0; a < elements.size(); ++a)
        for (std::size_t b = 0; b < elements.size(); ++b)
            ring.structure.add(a, b, index(compose(elements[a], elements[b], sig)), Scalar(1));
    ring.grams.push_back(Matrix::identity(elements.size()));
    return ring;
}

/// Trivially graded ring with all products zero and the standard form.
inline GradedRing gen_null_ring(std::size_t dim) {
    GradedRing ring;
    for (std::size_t i = 0; i < dim; ++i) {
        ring.labels.push_back("z" + std::to_string(i + 1));
        ring.degrees.emplace_back();
    }
    ring.grams.push_back(Matrix::identity(dim));
    return ring;
}

enum class Embedding {
    disjoint, // generators of the two groups become separate coordinates
    shared    // both rings already use the same signature
};

namespace detail {

/// Coordinate maps placing two signatures side by side; torsion re-sorted.
struct SignatureUnion {
    GroupSignature sig;
    std::vector<std::size_t> left, right; // old coordinate -> new coordinate

    SignatureUnion(const GroupSignature& a, const GroupSignature& b) {
        struct Slot {
            std::int64_t modulus;
            int side;
            std::size_t coord;
        };
        std::vector<Slot> slots;
        for (std::size_t i = 0; i < a.torsion.size(); ++i)
            slots.push_back({a.torsion[i], 0, a.free_rank + i});
        for (std::size_t i = 0; i < b.torsion.size(); ++i)
            slots.push_back({b.torsion[i], 1, b.free_rank + i});
        std::stable_sort(slots.begin(), slots.end(),
                         [](const Slot& x, const Slot& y) { return x.modulus < y.modulus; });
        const auto rank = a.free_rank + b.free_rank;
        left.resize(a.length());
        right.resize(b.length());
        for (std::size_t i = 0; i < a.free_rank; ++i)
            left[i] = i;
        for (std::size_t i = 0; i < b.free_rank; ++i)
            right[i] = a.free_rank + i;
        std::vector<std::int64_t> moduli;
        for (std::size_t s = 0; s < slots.size(); ++s) {
            moduli.push_back(slots[s].modulus);
            (slots[s].side == 0 ? left : right)[slots[s].coord] = rank + s;
        }
        sig = GroupSignature(rank, std::move(moduli));
    }

    GroupElement embed(const GroupElement& g, const std::vector<std::size_t>& map) const {
        std::vector<std::int64_t> e(sig.length(), 0);
        for (std::size_t i = 0; i < g.size(); ++i)
            e[map[i]] = g[i];
        return GroupElement(std::move(e));
    }
};

inline GradedRing block_sum(const GradedRing& a, const GradedRing& b, const GroupSignature& sig,
                            std::vector<GroupElement> degrees) {
    GradedRing out;
    out.sig = sig;
    out.labels = a.labels;
    out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
    out.degrees = std::move(degrees);
    const auto shift = a.dim();
    for (const auto& [key, vec] : a.structure.entries())
        for (const auto& [k, c] : vec)
            out.structure.add(key.first, key.second, k, c);
    for (const auto& [key, vec] : b.structure.entries())
        for (const auto& [k, c] : vec)
            out.structure.add(key.first + shift, key.second + shift, k + shift, c);
    const auto forms = std::max(a.grams.size(), b.grams.size());
    const auto n = out.dim();
    for (std::size_t f = 0; f < forms; ++f) {
        // a ring with fewer forms contributes a zero block
        Matrix m(n, n);
        if (f < a.grams.size())
            for (std::size_t i = 0; i < a.dim(); ++i)
                for (std::size_t j = 0; j < a.dim(); ++j)
                    m(i, j) = a.grams[f](i, j);
        if (f < b.grams.size())
            for (std::size_t i = 0; i < b.dim(); ++i)
                for (std::size_t j = 0; j < b.dim(); ++j)
                    m(i + shift, j + shift) = b.grams[f](i, j);
        out.grams.push_back(std::move(m));
    }
    return out;
}

} // namespace detail

/// Block-diagonal direct sum. With the disjoint embedding the two grading
/// groups are placed on separate coordinates; with the shared embedding both
/// rings must use one signature and keep their supports (and the connection
/// classes of their supports) apart.
inline GradedRing gen_direct_sum(const GradedRing& a, const GradedRing& b, Embedding embedding = Embedding::disjoint) {
    if (b.dim() == 0)
        return a;
    if (a.dim() == 0)
        return b;
    if (embedding == Embedding::disjoint) {
        const detail::SignatureUnion u(a.sig, b.sig);
        std::vector<GroupElement> degrees;
        for (const auto& g : a.degrees)
            degrees.push_back(u.embed(g, u.left));
        for (const auto& g : b.degrees)
            degrees.push_back(u.embed(g, u.right));
        return detail::block_sum(a, b, u.sig, std::move(degrees));
    }
    if (!(a.sig == b.sig))
        throw ParameterError("shared embedding requires identical group signatures");
    auto symmetric_closure = [](const GradedRing& r) {
        std::set<GroupElement> s;
        for (const auto& g : support(r)) {
            s.insert(g);
            s.insert(invert(g, r.sig));
        }
        return s;
    };
    const auto sa = symmetric_closure(a);
    for (const auto& g : symmetric_closure(b))
        if (sa.count(g))
            throw ParameterError("shared embedding: degree " + to_string(g) + " occurs in both summands");
    std::vector<GroupElement> degrees(a.degrees);
    degrees.insert(degrees.end(), b.degrees.begin(), b.degrees.end());
    auto out = detail::block_sum(a, b, a.sig, std::move(degrees));
    if (connection_classes(out).size() != connection_classes(a).size() + connection_classes(b).size())
        throw ParameterError("shared embedding connects the supports of the two summands");
    return out;
}

struct RandomRingParams {
    std::size_t max_dim = 12;
    std::size_t max_summands = 3;
};

namespace detail {

/// Deterministic across platforms: only raw mt19937_64 output is used.
class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t operator()(std::uint64_t lo, std::uint64_t hi) { return lo + rng_() % (hi - lo + 1); }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[(*this)(0, i - 1)]);
    }

private:
    std::mt19937_64 rng_;
};

inline GradedRing with_weights(GradedRing r, const std::vector<Scalar>& weights) {
    r.grams.clear();
    for (const auto& w : weights)
        r.grams.push_back(Matrix::identity(r.dim(), w));
    return r;
}

} // namespace detail

/// Seeded random direct sum of banded rings, group algebras and null lines.
/// Every output is a valid graded ring of dimension <= max_dim.
inline GradedRing gen_random(std::uint64_t seed, const RandomRingParams& params = {}) {
    if (params.max_dim == 0 || params.max_summands == 0)
        throw ParameterError("random ring needs max_dim >= 1 and max_summands >= 1");
    detail::Draw draw(seed);
    const auto summands = draw(1, params.max_summands);
    std::vector<Scalar> weights;
    const auto forms = draw(1, 2);
    for (std::uint64_t f = 0; f < forms; ++f)
        weights.emplace_back(mpq_class(1) + mpq_class(static_cast<long>(draw(0, 4)), static_cast<long>(draw(1, 3))));

    static const std::vector<std::vector<std::int64_t>> groups = {
        {}, {2}, {3}, {4}, {5}, {6}, {7}, {8}, {2, 2}, {2, 4}, {3, 3}, {2, 2, 2}};

    std::size_t budget = params.max_dim;
    std::optional<GradedRing> ring;
    for (std::uint64_t s = 0; s < summands && budget > 0; ++s) {
        GradedRing piece;
        const auto kind = draw(0, 19);
        if (kind < 10) {
            std::size_t max_n = 1;
            while ((max_n + 1) * (max_n + 1) <= budget && max_n < 4)
                ++max_n;
            BandedRingParams p;
            p.n = draw(1, max_n);
            p.r = draw(1, std::max<std::size_t>(1, std::min<std::size_t>(2, budget / (p.n * p.n))));
            auto pool = first_primes(40);
            draw.shuffle(pool);
            p.primes.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(p.n * p.r));
            p.weights = weights;
            piece = gen_banded(p);
        } else if (kind < 17) {
            std::vector<const std::vector<std::int64_t>*> fits;
            for (const auto& g : groups) {
                std::int64_t order = 1;
                for (auto m : g)
                    order *= m;
                if (static_cast<std::size_t>(order) <= budget)
                    fits.push_back(&g);
            }
            const auto& moduli = *fits[draw(0, fits.size() - 1)];
            piece = detail::with_weights(gen_group_algebra(GroupSignature(0, moduli)), weights);
        } else {
            piece = detail::with_weights(gen_null_ring(1), weights);
        }
        budget -= piece.dim();
        ring = ring ? gen_direct_sum(*ring, piece) : piece;
    }
    return *ring;
}

} // namespace graded
