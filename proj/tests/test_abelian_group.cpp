#include "graded/abelian_group.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace graded;

namespace {

GroupElement random_element(std::mt19937_64& rng, const GroupSignature& sig) {
    std::uniform_int_distribution<std::int64_t> free(-5, 5);
    std::vector<std::int64_t> e;
    for (std::size_t i = 0; i < sig.free_rank; ++i)
        e.push_back(free(rng));
    for (auto m : sig.torsion)
        e.push_back(std::uniform_int_distribution<std::int64_t>(0, m - 1)(rng));
    return GroupElement(e);
}

} // namespace

TEST(Compose, FreeRankTwoAddsCoordinates) {
    const GroupSignature sig(2, {});
    EXPECT_EQ(compose({1, 0}, {0, 1}, sig), GroupElement({1, 1}));
}

TEST(Compose, IdentityIsNeutral) {
    const GroupSignature sig(2, {});
    EXPECT_EQ(compose({0, 0}, {3, -2}, sig), GroupElement({3, -2}));
}

TEST(Compose, TorsionReducesModulo) {
    const GroupSignature sig(0, {3});
    EXPECT_EQ(compose({2}, {2}, sig), GroupElement({1}));
}

TEST(Compose, LengthMismatchIsMalformed) {
    const GroupSignature sig(2, {});
    EXPECT_THROW(compose({1}, {0, 1}, sig), MalformedInput);
    EXPECT_THROW(compose({1, 0, 0}, {0, 1}, sig), MalformedInput);
}

TEST(Compose, OutOfRangeTorsionCoordinateIsMalformed) {
    const GroupSignature sig(0, {3});
    EXPECT_THROW(compose({3}, {0}, sig), MalformedInput);
}

TEST(Invert, NegatesFreeCoordinates) {
    const GroupSignature sig(2, {});
    EXPECT_EQ(invert({1, -2}, sig), GroupElement({-1, 2}));
}

TEST(Invert, IdentityIsFixed) {
    const GroupSignature sig(1, {4});
    EXPECT_EQ(invert(identity(sig), sig), identity(sig));
}

TEST(Invert, TorsionComplement) {
    const GroupSignature sig(0, {5});
    EXPECT_EQ(invert({2}, sig), GroupElement({3}));
}

TEST(Invert, LengthMismatchIsMalformed) { EXPECT_THROW(invert({1}, GroupSignature(2, {})), MalformedInput); }

TEST(Identity, AllZeroVector) {
    EXPECT_EQ(identity(GroupSignature(2, {})), GroupElement({0, 0}));
    EXPECT_EQ(identity(GroupSignature(0, {3})), GroupElement({0}));
    EXPECT_TRUE(is_identity(identity(GroupSignature(3, {2, 7}))));
}

TEST(Signature, RejectsSmallOrUnsortedModuli) {
    EXPECT_THROW(GroupSignature(0, {1}), MalformedInput);
    EXPECT_THROW(GroupSignature(0, {0}), MalformedInput);
    EXPECT_THROW(GroupSignature(0, {5, 3}), MalformedInput);
    EXPECT_NO_THROW(GroupSignature(0, {2, 2, 3}));
}

TEST(Signature, OrderOfFiniteGroup) { EXPECT_EQ(GroupSignature(0, {2, 3, 4}).order(), 24); }

TEST(Enumerate, ListsEveryElementOnceInLexOrder) {
    const GroupSignature sig(0, {2, 3});
    const auto all = enumerate_elements(sig);
    ASSERT_EQ(all.size(), 6u);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
    EXPECT_EQ(std::set<GroupElement>(all.begin(), all.end()).size(), 6u);
    EXPECT_EQ(all.front(), GroupElement({0, 0}));
    EXPECT_EQ(all.back(), GroupElement({1, 2}));
}

TEST(Enumerate, TrivialGroupHasOneElement) { EXPECT_EQ(enumerate_elements(GroupSignature()).size(), 1u); }

TEST(Enumerate, InfiniteGroupRejected) { EXPECT_THROW(enumerate_elements(GroupSignature(1, {})), ParameterError); }

TEST(Canonicalize, ReducesNegativeTorsion) {
    const GroupSignature sig(1, {4});
    EXPECT_EQ(canonicalize({-3, -1}, sig), GroupElement({-3, 3}));
}

class GroupAxioms : public ::testing::TestWithParam<GroupSignature> {};

TEST_P(GroupAxioms, HoldOnRandomTriples) {
    const auto sig = GetParam();
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const auto a = random_element(rng, sig), b = random_element(rng, sig), c = random_element(rng, sig);
        EXPECT_EQ(compose(compose(a, b, sig), c, sig), compose(a, compose(b, c, sig), sig));
        EXPECT_EQ(compose(a, b, sig), compose(b, a, sig));
        EXPECT_EQ(compose(identity(sig), a, sig), a);
        EXPECT_EQ(compose(a, invert(a, sig), sig), identity(sig));
        EXPECT_EQ(invert(invert(a, sig), sig), a);
        EXPECT_EQ(invert(compose(a, b, sig), sig), compose(invert(a, sig), invert(b, sig), sig));
        EXPECT_TRUE(conforms(compose(a, b, sig), sig));
    }
}

TEST_P(GroupAxioms, CanonicalFormIsUnique) {
    // adding a multiple of a modulus to a torsion coordinate never changes the element
    const auto sig = GetParam();
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = random_element(rng, sig);
        auto shifted = a.exponents;
        for (std::size_t i = 0; i < sig.torsion.size(); ++i)
            shifted[sig.free_rank + i] += static_cast<std::int64_t>(trial % 5 - 2) * sig.torsion[i];
        EXPECT_EQ(canonicalize(shifted, sig), a);
    }
}

INSTANTIATE_TEST_SUITE_P(Signatures, GroupAxioms,
                         ::testing::Values(GroupSignature(2, {}), GroupSignature(0, {3}), GroupSignature(0, {2, 4}),
                                           GroupSignature(3, {2, 2, 5}), GroupSignature(1, {6})));
