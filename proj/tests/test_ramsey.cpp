#include <doctest.h>

#include <random>

#include "deltaset/generators.hpp"
#include "deltaset/ramsey.hpp"

using namespace deltaset;

namespace {

Relation neq_relation(int n) {
    Relation r = Relation::constant(n, true);
    for (int g = 0; g < n; ++g) r.set(g, g, false);
    return r;
}

}  // namespace

TEST_CASE("hypothesis check") {
    Semigroup z7 = Semigroup::cyclic(7);
    FilterOracle u = uniform_oracle(z7);

    auto all = hypothesis_check(z7, Relation::constant(7, true), u);
    CHECK(all.h_set == z7.full_set());
    CHECK(all.large);

    auto none = hypothesis_check(z7, Relation::constant(7, false), u);
    CHECK(none.h_set.empty());
    CHECK_FALSE(none.large);

    // g != g+h holds for every g exactly when h != 0, so H misses only the
    // identity; that is conull-short of Large under the uniform oracle.
    auto neq = hypothesis_check(z7, neq_relation(7), u);
    ElementSet expected = z7.full_set();
    expected.erase(0);
    CHECK(neq.h_set == expected);
    CHECK_FALSE(neq.large);
    CHECK(hypothesis_check(z7, neq_relation(7), frechet_oracle(7, 1)).large);
}

TEST_CASE("extraction with the trivial relation") {
    Semigroup z5 = Semigroup::cyclic(5);
    FilterOracle u = uniform_oracle(z5);
    RecurrenceEngine eng(z5, u);
    Relation r = Relation::constant(5, true);
    for (int n = 0; n <= 4; ++n) {
        RamseyTranscript t = delta_ramsey_witness(eng, r, z5.full_set(), n);
        CHECK(int(t.witness.size()) == n + 1);
        CHECK(verify_transcript(z5, r, z5.full_set(), t, u).ok());
    }
}

TEST_CASE("distinct-element clique on Z7 under frechet") {
    Semigroup z7 = Semigroup::cyclic(7);
    FilterOracle f = frechet_oracle(7, 1);
    RecurrenceEngine eng(z7, f);
    Relation r = neq_relation(7);
    RamseyTranscript t = delta_ramsey_witness(eng, r, z7.full_set(), 3);
    CHECK(t.witness.size() == 4);
    for (size_t i = 0; i < t.witness.size(); ++i)
        for (size_t j = i + 1; j < t.witness.size(); ++j)
            CHECK(t.witness[i] != t.witness[j]);
    CHECK(verify_transcript(z7, r, z7.full_set(), t, f).ok());
}

TEST_CASE("extraction error paths") {
    Semigroup z5 = Semigroup::cyclic(5);
    FilterOracle u = uniform_oracle(z5);
    RecurrenceEngine eng(z5, u);
    CHECK_THROWS_AS(delta_ramsey_witness(eng, neq_relation(5), z5.full_set(), 2),
                    hypothesis_violated_error);
    CHECK_THROWS_AS(
        delta_ramsey_witness(eng, Relation::constant(5, true), ElementSet(5), 1),
        precondition_error);
}

TEST_CASE("verifier catches corrupted transcripts") {
    Semigroup z7 = Semigroup::cyclic(7);
    FilterOracle f = frechet_oracle(7, 1);
    RecurrenceEngine eng(z7, f);
    Relation r = neq_relation(7);
    RamseyTranscript good = delta_ramsey_witness(eng, r, z7.full_set(), 2);
    REQUIRE(verify_transcript(z7, r, z7.full_set(), good, f).ok());

    ElementSet a = z7.full_set();
    a.erase(good.witness[0]);
    auto membership = verify_transcript(z7, r, a, good, f);
    CHECK_FALSE(membership.ok());

    Relation flipped = r;
    flipped.set(good.witness[2], good.witness[0], false);
    auto clique = verify_transcript(z7, flipped, z7.full_set(), good, f);
    bool clique_violation = false;
    for (const auto& v : clique.violations) clique_violation |= v.find("clique") == 0;
    CHECK(clique_violation);

    RamseyTranscript tampered = good;
    tampered.witness[1] = tampered.witness[0];
    CHECK_FALSE(verify_transcript(z7, r, z7.full_set(), tampered, f).ok());
}

TEST_CASE("thickness diagnostics are recorded when requested") {
    Semigroup z7 = Semigroup::cyclic(7);
    FilterOracle f = frechet_oracle(7, 1);
    RecurrenceEngine eng(z7, f);
    RamseyOptions opts;
    opts.thickness_diagnostics = true;
    RamseyTranscript t =
        delta_ramsey_witness(eng, Relation::constant(7, true), z7.full_set(), 2, opts);
    CHECK(t.thickness.size() == 3);
    for (const auto& d : t.thickness) {
        CHECK(d.evaluated);
        CHECK(d.holds);
        CHECK(d.exhaustive);
    }
}

TEST_CASE("brute force clique search") {
    Semigroup z5 = Semigroup::cyclic(5);
    auto always = brute_force_clique(Relation::constant(5, true), z5.full_set(), 2);
    REQUIRE(always.has_value());
    CHECK(*always == std::vector<int>{0, 0, 0});

    CHECK_FALSE(brute_force_clique(Relation::constant(5, false), z5.full_set(), 1).has_value());

    // R(x, y) iff y - x in {1, 2}: the hypothesis fails (H = {1,2} is not
    // Large), so the extractor refuses while the clique itself exists.
    Relation steps(5);
    for (int x = 0; x < 5; ++x)
        for (int d : {1, 2}) steps.set(x, (x + d) % 5, true);
    auto found = brute_force_clique(steps, z5.full_set(), 2);
    REQUIRE(found.has_value());
    FilterOracle f = frechet_oracle(5, 1);
    RecurrenceEngine eng(z5, f);
    CHECK_THROWS_AS(delta_ramsey_witness(eng, steps, z5.full_set(), 2),
                    hypothesis_violated_error);

    CHECK_THROWS_AS(brute_force_clique(Relation::constant(5, true), z5.full_set(), 4, 3),
                    indeterminate_error);
}

TEST_CASE("extractor never fabricates and never misses on seeded instances") {
    Semigroup z7 = Semigroup::cyclic(7);
    FilterOracle f = frechet_oracle(7, 1);
    RecurrenceEngine eng(z7, f);
    for (uint64_t seed = 0; seed < 25; ++seed) {
        std::mt19937_64 rng(seed);
        Relation r = random_hypothesis_relation(z7, rng);
        bool extracted = false;
        RamseyTranscript t;
        try {
            t = delta_ramsey_witness(eng, r, z7.full_set(), 3);
            extracted = true;
        } catch (const no_witness_error& e) {
            CHECK(e.deepest.h.size() <= 3);
        }
        auto brute = brute_force_clique(r, z7.full_set(), 3);
        CHECK(extracted == brute.has_value());
        if (extracted) CHECK(verify_transcript(z7, r, z7.full_set(), t, f).ok());
    }
}
