#include <doctest.h>

#include "deltaset/delta_measure.hpp"
#include "deltaset/json_io.hpp"

using namespace deltaset;

TEST_CASE("counting measure basics") {
    Semigroup z5 = Semigroup::cyclic(5);
    SubadditiveMeasure mu = counting_measure(z5);
    CHECK(mu.value(z5.full_set()) == Rational(1));
    CHECK(mu.value(ElementSet(5)) == Rational(0));
    CHECK(mu.value(ElementSet::of(5, {0, 1})) == Rational(2, 5));
    CHECK_THROWS_AS(counting_measure(Semigroup::truncated_nat(6)), unsupported_error);
}

TEST_CASE("upper density over windows") {
    Semigroup tn = Semigroup::truncated_nat(100);
    ElementSet evens(100);
    for (int i = 0; i < 100; i += 2) evens.insert(i);
    std::vector<ElementSet> windows;
    for (int hi : {10, 50, 100}) {
        ElementSet w(100);
        for (int i = 0; i < hi; ++i) w.insert(i);
        windows.push_back(std::move(w));
    }
    auto d = upper_density(evens, windows);
    CHECK(d.value == Rational(1, 2));
    CHECK(d.windows_used == 3);
    CHECK(upper_density(tn.full_set(), windows).value == Rational(1));
    CHECK(upper_density(ElementSet(100), windows).value == Rational(0));
    CHECK_THROWS_AS(upper_density(evens, {}), invalid_input_error);
}

TEST_CASE("counting measure passes the delta-measure audit") {
    Semigroup z6 = Semigroup::cyclic(6);
    auto rep = delta_measure_audit(z6, counting_measure(z6));
    CHECK(rep.exhaustive);
    CHECK(rep.delta_measure());
    CHECK(rep.violations.empty());
}

TEST_CASE("windowed upper density fails translate additivity and is reported") {
    Semigroup tn = Semigroup::truncated_nat(8);
    std::vector<ElementSet> windows;
    ElementSet w1(8);
    w1.insert(0);
    w1.insert(1);
    ElementSet w2 = ElementSet::full(8);
    windows.push_back(w1);
    windows.push_back(w2);
    SubadditiveMeasure du = upper_density_measure(tn, windows);

    // A = {2,4,5}: the translates A-0 and A-4 are disjoint, their maxima sit
    // in different windows, and the union loses mass against the sum.
    ElementSet a = ElementSet::of(8, {2, 4, 5});
    ElementSet a0 = translate_preimage(tn, a, 0);
    ElementSet a4 = translate_preimage(tn, a, 4);
    CHECK((a0 & a4).empty());
    CHECK(du.value(a0 | a4) < du.value(a0) + du.value(a4));

    auto rep = delta_measure_audit(tn, du);
    CHECK(rep.subadditive_ok);
    CHECK_FALSE(rep.translate_additive_ok);
    CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("broken all-ones measure is flagged on translate additivity") {
    Semigroup z6 = Semigroup::cyclic(6);
    SubadditiveMeasure broken(
        nlohmann::json{{"kind", "broken"}}, 6,
        [](const ElementSet& a) { return a.empty() ? Rational(0) : Rational(1); });
    auto rep = delta_measure_audit(z6, broken);
    CHECK(rep.endpoints_ok);
    CHECK(rep.monotone_ok);
    CHECK(rep.subadditive_ok);
    CHECK_FALSE(rep.translate_additive_ok);
}

TEST_CASE("quantitative recurrence golden values") {
    Semigroup z5 = Semigroup::cyclic(5);
    SubadditiveMeasure mu = counting_measure(z5);
    auto q = quantitative_recurrence(z5, mu, ElementSet::of(5, {0, 1}));
    CHECK(q.bound == Rational(4, 75));
    CHECK(q.good_h == ElementSet::of(5, {0, 1, 4}));
    CHECK(q.mu_a == Rational(2, 5));
    CHECK(q.ramsey_n == 8);  // ceil(3 / (2/5)) = ceil(7.5)

    // The identity always qualifies.
    for (int size = 1; size <= 5; ++size) {
        ElementSet a(5);
        for (int i = 0; i < size; ++i) a.insert(i);
        auto qa = quantitative_recurrence(z5, mu, a);
        CHECK(qa.good_h.test(0));
    }

    auto qg = quantitative_recurrence(z5, mu, z5.full_set());
    CHECK(qg.good_h == z5.full_set());

    CHECK_THROWS_AS(quantitative_recurrence(z5, mu, ElementSet(5)), precondition_error);
}

TEST_CASE("union bound on translates") {
    Semigroup z6 = Semigroup::cyclic(6);
    SubadditiveMeasure mu = counting_measure(z6);
    ElementSet a = ElementSet::of(6, {0, 1});

    auto single = union_bound_check(z6, mu, a, {2});
    CHECK(single.holds);
    CHECK(single.slack == Rational(0));

    auto disjoint = union_bound_check(z6, mu, a, {0, 2, 4});
    CHECK(disjoint.holds);
    CHECK(disjoint.sum_pairs == Rational(0));
    CHECK(disjoint.slack == Rational(0));

    auto overlapping = union_bound_check(z6, mu, a, {0, 1, 2});
    CHECK(overlapping.holds);
    CHECK(overlapping.lhs >= overlapping.rhs);
}

TEST_CASE("fp shift corollary certificates") {
    Semigroup z8 = Semigroup::cyclic(8);
    SubadditiveMeasure mu = counting_measure(z8);

    auto full = fp_shift_corollary_check(z8, mu, z8.full_set(), 3);
    CHECK(full.complete);
    CHECK(full.shift_g == 0);

    ElementSet a = ElementSet::of(8, {0, 1, 2, 3});
    auto cert = fp_shift_corollary_check(z8, mu, a, 2);
    CHECK(cert.complete);
    REQUIRE(cert.shift_g >= 0);
    CHECK(a.test(cert.shift_g));
    for (unsigned mask = 1; mask < (1u << cert.directions.size()); ++mask) {
        auto p = subset_product(z8, cert.directions, mask);
        REQUIRE(p.has_value());
        CHECK(a.test(z8.product(cert.shift_g, *p)));
    }

    CHECK_THROWS_AS(fp_shift_corollary_check(z8, mu, ElementSet(8), 2), precondition_error);
}

TEST_CASE("qualitative recurrence for counting measures") {
    std::vector<Semigroup> catalog;
    for (int n = 1; n <= 8; ++n) catalog.push_back(Semigroup::cyclic(n));
    catalog.push_back(Semigroup::symmetric_3());
    catalog.push_back(Semigroup::dihedral_4());
    catalog.push_back(Semigroup::quaternion_8());
    for (const auto& g : catalog) {
        SubadditiveMeasure mu = counting_measure(g);
        FilterOracle conull = measure_conull_oracle(mu);
        RecurrenceEngine eng(g, conull);
        for (uint64_t mask = 1; mask < (uint64_t{1} << g.size()); ++mask) {
            ElementSet a(g.size());
            for (int i = 0; i < g.size(); ++i)
                if (mask >> i & 1) a.insert(i);
            for (int n = 1; n <= 3; ++n) CHECK(eng.is_recurrent(a, n));
        }
    }
}

TEST_CASE("positive sets have leafless trees at depth 3") {
    for (const auto& g : {Semigroup::cyclic(5), Semigroup::symmetric_3()}) {
        FilterOracle conull = measure_conull_oracle(counting_measure(g));
        RecurrenceEngine eng(g, conull);
        for (uint64_t mask = 1; mask < (uint64_t{1} << g.size()); mask += 3) {
            ElementSet a(g.size());
            for (int i = 0; i < g.size(); ++i)
                if (mask >> i & 1) a.insert(i);
            DerivationTree t = derivation_tree(eng, a, 3);
            CHECK(t.leaf_min == -1);
            CHECK(t.depth_max == 3);
        }
    }
}
