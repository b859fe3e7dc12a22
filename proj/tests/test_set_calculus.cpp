#include <doctest.h>

#include <random>

#include "deltaset/generators.hpp"
#include "deltaset/set_calculus.hpp"

using namespace deltaset;

TEST_CASE("derivative examples") {
    Semigroup z6 = Semigroup::cyclic(6);
    ElementSet a = ElementSet::of(6, {0, 1, 2});
    CHECK(derivative(z6, a, 0) == a);
    CHECK(derivative(z6, a, 1) == ElementSet::of(6, {0, 1}));
    CHECK(derivative(z6, ElementSet(6), 3) == ElementSet(6));
}

TEST_CASE("iterated derivative examples") {
    Semigroup z6 = Semigroup::cyclic(6);
    ElementSet a = ElementSet::of(6, {0, 1, 2, 3});
    CHECK(iterated_derivative(z6, a, {}) == a);
    CHECK(iterated_derivative(z6, a, {{1, 1}}) == ElementSet::of(6, {0, 1}));
}

TEST_CASE("mixed derivatives commute on all of Z4") {
    Semigroup z4 = Semigroup::cyclic(4);
    for (uint64_t mask = 0; mask < 16; ++mask) {
        ElementSet a(4);
        for (int i = 0; i < 4; ++i)
            if (mask >> i & 1) a.insert(i);
        for (int g = 0; g < 4; ++g)
            for (int h = 0; h < 4; ++h)
                CHECK(iterated_derivative(z4, a, {{g, h}}) ==
                      iterated_derivative(z4, a, {{h, g}}));
    }
}

TEST_CASE("monotonicity of the derivative") {
    Semigroup s3 = Semigroup::symmetric_3();
    std::mt19937_64 rng(42);
    for (int k = 0; k < 50; ++k) {
        ElementSet b = random_subset(6, rng);
        ElementSet a = b & random_subset(6, rng);
        for (int g = 0; g < 6; ++g) CHECK(derivative(s3, b, g).contains(derivative(s3, a, g)));
    }
}

TEST_CASE("finite product examples") {
    Semigroup tn = Semigroup::truncated_nat(10);
    CHECK(finite_products(tn, {1, 2}, false) == ElementSet::of(10, {1, 2, 3}));
    CHECK(finite_products(tn, {}, false) == ElementSet(10));
    CHECK(finite_products(tn, {}, true) == ElementSet::of(10, {0}));
    CHECK_THROWS_AS(finite_products(tn, {6, 5}, false), out_of_window_error);

    // Decreasing index order: products multiply later entries on the left.
    Semigroup s3 = Semigroup::symmetric_3();
    int a = -1, b = -1;
    for (int x = 1; x < 6 && (a < 0 || b < 0); ++x)
        for (int y = x + 1; y < 6; ++y)
            if (s3.product(x, y) != s3.product(y, x)) {
                a = x;
                b = y;
                break;
            }
    REQUIRE(a >= 0);
    ElementSet fp = finite_products(s3, {a, b}, false);
    ElementSet expected(6);
    expected.insert(a);
    expected.insert(b);
    expected.insert(s3.product(b, a));
    CHECK(fp == expected);
}

TEST_CASE("identity inclusion requires an identity") {
    // Left-zero semigroup: a*b = a, associative, no identity.
    std::vector<std::vector<int>> t(3, std::vector<int>(3));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) t[size_t(a)][size_t(b)] = a;
    Semigroup lz = Semigroup::from_table("leftzero", t, std::nullopt);
    CHECK_THROWS_AS(finite_products(lz, {0, 1}, true), unsupported_error);
    CHECK(finite_products(lz, {0, 1}, false) == ElementSet::of(3, {0, 1}));
}

TEST_CASE("fp_search examples") {
    Semigroup z8 = Semigroup::cyclic(8);
    auto r = fp_search(z8, z8.full_set(), 2);
    REQUIRE(r.found());
    CHECK(z8.full_set().contains(finite_products(z8, r.generators, false)));

    Semigroup tn = Semigroup::truncated_nat(10);
    CHECK_FALSE(fp_search(tn, ElementSet::of(10, {1}), 2).found());
    auto r2 = fp_search(tn, ElementSet::of(10, {1, 2, 3}), 2);
    REQUIRE(r2.found());
    CHECK(ElementSet::of(10, {1, 2, 3}).contains(finite_products(tn, r2.generators, false)));
}

TEST_CASE("fp_search honours its contract on random sets") {
    Semigroup z12 = Semigroup::cyclic(12);
    std::mt19937_64 rng(7);
    int found = 0;
    for (int k = 0; k < 60; ++k) {
        ElementSet a = random_subset(12, rng);
        auto r = fp_search(z12, a, 3);
        if (r.found()) {
            ++found;
            CHECK(int(r.generators.size()) == 3);
            CHECK(a.contains(finite_products(z12, r.generators, false)));
        }
    }
    CHECK(found > 0);

    // Deterministic: the same search twice yields the same witness.
    ElementSet a = ElementSet::of(12, {1, 2, 3, 4, 6, 8});
    auto r1 = fp_search(z12, a, 2);
    auto r2 = fp_search(z12, a, 2);
    REQUIRE(r1.found());
    CHECK(r1.generators == r2.generators);
}

TEST_CASE("fp_search none-exists is backed by exhaustion, not the budget") {
    Semigroup tn = Semigroup::truncated_nat(10);
    auto r = fp_search(tn, ElementSet::of(10, {1}), 2);
    CHECK(r.status == FpSearchResult::Status::none_exists);
    auto tiny = fp_search(tn, ElementSet::of(10, {1, 2, 3, 5, 8, 9}), 3, 2);
    CHECK(tiny.status == FpSearchResult::Status::budget_exhausted);
}

TEST_CASE("iterated derivative expands into translate preimages") {
    Semigroup s3 = Semigroup::symmetric_3();
    std::mt19937_64 rng(11);
    for (int k = 0; k < 30; ++k) {
        ElementSet a = random_subset(6, rng);
        std::vector<int> steps{uniform_below(rng, 6), uniform_below(rng, 6),
                               uniform_below(rng, 6)};
        ElementSet lhs = iterated_derivative(s3, a, {steps});
        ElementSet rhs = a;
        for (unsigned mask = 1; mask < 8; ++mask)
            rhs &= translate_preimage(s3, a, *subset_product(s3, steps, mask));
        CHECK(lhs == rhs);
    }
}
