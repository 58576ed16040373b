#include "graded/generators.hpp"
#include "graded/graded_ring.hpp"
#include "graded/ring_io.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace graded;

namespace {

std::string data(const std::string& name) { return std::string(GRADED_TEST_DATA) + "/" + name; }

/// Two-element ring over Z: 1 in degree 0, x in degree 1, with x*x planted by the caller.
GradedRing two_point(std::size_t target_of_xx) {
    GradedRing r;
    r.sig = GroupSignature(1, {});
    r.labels = {"1", "x"};
    r.degrees = {GroupElement{0}, GroupElement{1}};
    r.structure.add(0, 0, 0, 1);
    r.structure.add(0, 1, 1, 1);
    r.structure.add(1, 0, 1, 1);
    r.structure.add(1, 1, target_of_xx, 1);
    r.grams.push_back(Matrix::identity(2));
    return r;
}

/// 1-based a((n,t),(m,t)) index.
std::size_t unit(std::size_t size, std::size_t n, std::size_t m, std::size_t t = 1) {
    return unit_index(size, n - 1, m - 1, t - 1);
}

} // namespace

TEST(Validate, BandedRingsAreValid) {
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t r = 1; r <= 3; ++r) {
            const auto report = validate(gen_banded({.n = n, .r = r}));
            EXPECT_TRUE(report.ok()) << "N=" << n << " r=" << r;
        }
}

TEST(Validate, PlantedGradingDefect) {
    const auto rep = validate(two_point(1));
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].kind, ViolationKind::grading);
    EXPECT_EQ(rep.violations[0].indices, (std::vector<std::size_t>{1, 1, 1}));
}

TEST(Validate, IndefiniteGram) {
    auto r = gen_null_ring(2);
    r.grams = {Matrix::identity(2)};
    r.grams[0](0, 1) = 2;
    r.grams[0](1, 0) = 2;
    const auto rep = validate(r);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].kind, ViolationKind::psd);
    const auto& x = rep.violations[0].scalars;
    EXPECT_LT(sgn(oracle::form(x, x, r.grams[0]).re()), 0);
}

TEST(Validate, JointKernelIsReportedWithWitness) {
    auto r = gen_null_ring(3);
    r.grams = {Matrix(3, 3), Matrix(3, 3)};
    r.grams[0](0, 0) = 1;
    r.grams[1](1, 1) = 2;
    const auto rep = validate(r);
    ASSERT_EQ(rep.count(ViolationKind::hausdorff), 1u);
    const auto& v = rep.violations[0].scalars;
    EXPECT_FALSE(is_zero(v));
    for (const auto& g : r.grams)
        EXPECT_TRUE(oracle::form(v, v, g).is_zero());
}

TEST(Validate, OrthogonalityAcrossDegrees) {
    auto r = two_point(0);
    r.structure = {};
    r.grams[0](0, 1) = Scalar(1, 2);
    r.grams[0](1, 0) = Scalar(1, 2);
    const auto rep = validate(r);
    ASSERT_EQ(rep.violations.size(), 1u);
    EXPECT_EQ(rep.violations[0].kind, ViolationKind::orthogonality);
    EXPECT_EQ(rep.violations[0].indices, (std::vector<std::size_t>{0, 0, 1}));
}

TEST(Validate, NonAssociativeTableGivesTripleWitnesses) {
    GradedRing r = gen_null_ring(2);
    r.structure.add(0, 0, 1, 1);
    r.structure.add(1, 0, 1, 1);
    const auto rep = validate(r);
    ASSERT_GT(rep.count(ViolationKind::associativity), 0u);
    for (const auto& v : rep.violations) {
        ASSERT_EQ(v.kind, ViolationKind::associativity);
        const auto n = r.dim();
        const auto ei = unit_vector(n, v.indices[0]), ej = unit_vector(n, v.indices[1]),
                   ek = unit_vector(n, v.indices[2]);
        EXPECT_NE(oracle::product(r, oracle::product(r, ei, ej), ek),
                  oracle::product(r, ei, oracle::product(r, ej, ek)));
    }
}

TEST(Validate, ShapeProblemsAreMalformedNotCrashes) {
    auto r = gen_banded({.n = 2, .r = 1});
    r.degrees.pop_back();
    EXPECT_TRUE(validate(r).malformed());

    r = gen_banded({.n = 2, .r = 1});
    r.structure.add(0, 9, 1, 1);
    EXPECT_TRUE(validate(r).malformed());

    r = gen_banded({.n = 2, .r = 1});
    r.grams.clear();
    EXPECT_TRUE(validate(r).malformed());

    r = gen_banded({.n = 2, .r = 1});
    r.grams[0](0, 1) = 1;
    EXPECT_TRUE(validate(r).malformed());

    r = gen_banded({.n = 2, .r = 1});
    r.degrees[0] = GroupElement{1};
    EXPECT_TRUE(validate(r).malformed());
}

TEST(Multiply, BasisProductsMatchTable) {
    const auto r = gen_banded({.n = 3, .r = 2});
    for (std::size_t i = 0; i < r.dim(); ++i)
        for (std::size_t j = 0; j < r.dim(); ++j)
            EXPECT_EQ(multiply(r, unit_vector(r.dim(), i), unit_vector(r.dim(), j)), r.basis_product(i, j));
}

TEST(Multiply, MatrixUnitRule) {
    const auto r = gen_banded({.n = 4, .r = 1});
    const auto n = r.dim();
    EXPECT_EQ(multiply(r, unit_vector(n, unit(4, 1, 2)), unit_vector(n, unit(4, 2, 3))), unit_vector(n, unit(4, 1, 3)));
    EXPECT_TRUE(is_zero(multiply(r, unit_vector(n, unit(4, 1, 2)), unit_vector(n, unit(4, 3, 4)))));
    EXPECT_EQ(r.labels[unit(4, 1, 2)], "a((1,1),(2,1))");
}

TEST(Multiply, BilinearAndAssociativeOnRandomVectors) {
    std::mt19937_64 rng(8);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto r = gen_random(seed);
        const auto n = r.dim();
        for (int t = 0; t < 5; ++t) {
            const auto u = oracle::random_vector(rng, n), v = oracle::random_vector(rng, n),
                       w = oracle::random_vector(rng, n);
            EXPECT_EQ(multiply(r, multiply(r, u, v), w), multiply(r, u, multiply(r, v, w)));
            Vector vw(n);
            for (std::size_t k = 0; k < n; ++k)
                vw[k] = v[k] + w[k] * Scalar(3);
            auto lhs = multiply(r, u, vw), a = multiply(r, u, v), b = multiply(r, u, w);
            for (std::size_t k = 0; k < n; ++k)
                EXPECT_EQ(lhs[k], a[k] + b[k] * Scalar(3));
            EXPECT_EQ(multiply(r, u, v), oracle::product(r, u, v));
        }
    }
}

TEST(Multiply, LengthMismatchIsMalformed) {
    const auto r = gen_banded({.n = 2, .r = 1});
    EXPECT_THROW(multiply(r, Vector(3), Vector(4)), MalformedInput);
}

TEST(Support, TrivialGradingIsEmpty) {
    auto r = gen_null_ring(1);
    r.structure.add(0, 0, 0, 1);
    EXPECT_TRUE(support(r).empty());
}

TEST(Support, SmallestBandedRing) {
    const auto r = gen_banded({.n = 2, .r = 1});
    const auto s = support(r);
    EXPECT_EQ(s, (std::vector<GroupElement>{GroupElement{-1, 1}, GroupElement{1, -1}}));
}

TEST(Support, CountMatchesEnumerationOracle) {
    for (std::size_t n = 1; n <= 4; ++n)
        for (std::size_t r = 1; r <= 3; ++r) {
            const auto ring = gen_banded({.n = n, .r = r});
            EXPECT_EQ(support(ring).size(), r * n * (n - 1));
            EXPECT_EQ(support(ring).size(), oracle::support_set(ring).size());
        }
}

TEST(Component, IdentityAndUnattained) {
    const auto r = gen_banded({.n = 2, .r = 1});
    const auto e1 = component(r, identity(r.sig));
    EXPECT_EQ(e1.dim(), 2u);
    EXPECT_TRUE(contains(e1, unit_vector(4, unit(2, 1, 1))));
    EXPECT_TRUE(contains(e1, unit_vector(4, unit(2, 2, 2))));
    EXPECT_TRUE(component(r, GroupElement{5, 5}).is_zero());
}

TEST(Component, DimensionsPartitionTheBasis) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto r = gen_random(seed);
        std::size_t total = 0;
        Subspace acc = span({}, r.dim());
        for (const auto& [g, idx] : degree_components(r)) {
            const auto c = component(r, g);
            total += c.dim();
            acc = sum(acc, c);
        }
        EXPECT_EQ(total, r.dim());
        EXPECT_TRUE(acc.is_full());
    }
}

TEST(Component, ProductGradingAndOrthogonalDecomposition) {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto r = gen_random(seed);
        const auto comps = degree_components(r);
        for (const auto& [g, gi] : comps)
            for (const auto& [h, hi] : comps) {
                const auto gh = component(r, compose(g, h, r.sig));
                for (auto a : gi)
                    for (auto b : hi) {
                        EXPECT_TRUE(contains(gh, r.basis_product(a, b)));
                        if (g != h)
                            for (const auto& gram : r.grams)
                                EXPECT_TRUE(gram(a, b).is_zero());
                    }
            }
    }
}

TEST(Subring, BandOfBandedRingIsItself) {
    const auto r = gen_banded({.n = 2, .r = 2});
    std::vector<Vector> band;
    for (std::size_t i = 0; i < 4; ++i)
        band.push_back(unit_vector(8, i));
    const auto sub = subring(r, span(band, 8));
    EXPECT_EQ(sub.dim(), 4u);
    EXPECT_TRUE(validate(sub).ok());
    EXPECT_EQ(support(sub).size(), 2u);
}

TEST(RingSpec, RoundTripOfGenerators) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const auto r = gen_random(seed);
        const auto parsed = parse_ring_spec(ring_to_json(r).dump()).ring;
        EXPECT_EQ(parsed.sig, r.sig);
        EXPECT_EQ(parsed.labels, r.labels);
        EXPECT_EQ(parsed.degrees, r.degrees);
        EXPECT_EQ(parsed.structure, r.structure);
        EXPECT_EQ(parsed.grams, r.grams);
        EXPECT_EQ(ring_to_json(parsed).dump(), ring_to_json(r).dump());
    }
}

TEST(RingSpec, GaussianRationalSampleLoads) {
    const auto spec = load_ring_spec(data("gaussian_line.json"));
    EXPECT_TRUE(validate(spec.ring).ok());
    EXPECT_EQ(spec.ring.dim(), 2u);
    EXPECT_EQ(spec.ring.grams.size(), 2u);
    // g * g = -1
    EXPECT_EQ(multiply(spec.ring, unit_vector(2, 1), unit_vector(2, 1)), (Vector{Scalar(-1), Scalar(0)}));
}

TEST(RingSpec, ErrorsNameTheField) {
    auto expect_error = [](const std::string& text, const std::string& fragment) {
        try {
            parse_ring_spec(text);
            ADD_FAILURE() << "accepted: " << text;
        } catch (const MalformedInput& e) {
            EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
        }
    };
    const std::string head = R"({"format_version": 1, "group": {"free_rank": 0, "torsion": []}, "basis": ["u"], )";
    expect_error(head + R"("degrees": [[]], "structure": [{"i": 0, "j": 0, "k": 0, "value": "1/0"}], "grams": [[["1"]]]})",
                 "/structure/0/value");
    expect_error(head + R"("degrees": [[]], "structure": [{"i": 0, "j": 0, "value": "1"}], "grams": [[["1"]]]})",
                 "/structure/0/k");
    expect_error(head + R"("degrees": [[]], "structure": [], "grams": [[["1"], ["2", "3"]]]})", "/grams/0/1");
    expect_error(head + R"("degrees": [[]], "structure": []})", "/grams");
    expect_error(R"({"format_version": 2})", "/format_version");
    expect_error("{\"format_version\": 1,\n \"group\": }", "line 2");
    expect_error(R"({"format_version": 1, "group": {"free_rank": 0, "torsion": [1]}})", "/group/torsion");
}

TEST(RingSpec, MalformedFixtureFailsToLoadWithPath) {
    try {
        load_ring_spec(data("defect_malformed.json"));
        FAIL();
    } catch (const MalformedInput& e) {
        EXPECT_NE(std::string(e.what()).find("defect_malformed.json"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("/structure/0/value"), std::string::npos);
    }
    EXPECT_THROW(load_ring_spec(data("does_not_exist.json")), MalformedInput);
}
