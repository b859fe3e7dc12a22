#include <doctest.h>

#include <cmath>
#include <random>

#include "deltaset/generators.hpp"
#include "deltaset/hilbert_vdc.hpp"

using namespace deltaset;

namespace {

VectorFamily orthonormal_family(int carrier, int dim) {
    VectorFamily f;
    f.dim = dim;
    for (int g = 0; g < carrier; ++g) {
        std::vector<double> v(size_t(dim), 0.0);
        v[size_t(g % dim)] = 1.0;
        f.vectors.push_back(std::move(v));
    }
    return f;
}

}  // namespace

TEST_CASE("pairwise sum is exact on structured input") {
    std::vector<double> xs(100, 0.125);
    CHECK(pairwise_sum(xs) == doctest::Approx(12.5).epsilon(1e-15));
}

TEST_CASE("vdc hypothesis on an orthonormal family") {
    Semigroup z8 = Semigroup::cyclic(8);
    VectorFamily fam = orthonormal_family(8, 8);
    FilterOracle f = frechet_oracle(8, 1);
    auto res = vdc_hypothesis(z8, fam, f, 0.1);
    ElementSet expected = z8.full_set();
    expected.erase(0);
    CHECK(res.good_h == expected);
    CHECK(res.satisfied);

    // All vectors equal: every inner product is 1, no h qualifies.
    VectorFamily flat;
    flat.dim = 4;
    for (int g = 0; g < 8; ++g) flat.vectors.push_back({1.0, 0.0, 0.0, 0.0});
    auto res2 = vdc_hypothesis(z8, flat, f, 0.1);
    CHECK(res2.good_h.empty());
    CHECK_FALSE(res2.satisfied);
}

TEST_CASE("vdc hypothesis matches a direct double scan") {
    Semigroup z32 = Semigroup::cyclic(32);
    std::mt19937_64 rng(99);
    VectorFamily fam = perturbed_orthonormal_family(32, 16, 1e-3, rng);
    FilterOracle f = frechet_oracle(32, 2);
    double eps = 0.1;
    auto res = vdc_hypothesis(z32, fam, f, eps);
    for (int h = 0; h < 32; ++h) {
        ElementSet inner(32);
        for (int g = 0; g < 32; ++g)
            if (std::abs(dot(fam.at(g), fam.at((g + h) % 32))) <= eps) inner.insert(g);
        CHECK(res.good_h.test(h) == f.large(inner));
    }
}

TEST_CASE("vdc conclusion") {
    Semigroup z8 = Semigroup::cyclic(8);
    VectorFamily fam = orthonormal_family(8, 8);
    FilterOracle f = frechet_oracle(8, 1);
    std::vector<double> zero(8, 0.0);
    CHECK(vdc_conclusion(z8, fam, zero, f, 0.01).holds);

    // A single spiked direction: the bad set is one point, Small under
    // frechet, Neither (positive) under uniform.
    auto spiked = vdc_conclusion(z8, fam, fam.vectors[0], f, 0.5);
    CHECK(spiked.bad_set == ElementSet::of(8, {0}));
    CHECK(spiked.holds);
    auto uni = vdc_conclusion(z8, fam, fam.vectors[0], uniform_oracle(z8), 0.5);
    CHECK_FALSE(uni.holds);
}

TEST_CASE("bessel chain on an exactly orthonormal system") {
    VectorFamily fam = orthonormal_family(4, 4);
    std::vector<double> f{0.5, 0.5, 0.5, 0.5};
    auto rep = bessel_error_chain(fam.vectors, f, 0.0);
    CHECK(rep.all_lines_ok);
    CHECK_FALSE(rep.contradiction);
    // Classical Bessel: the residual is ||f||^2 - sum of coefficients^2.
    CHECK(rep.lines[0].value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("bessel chain with n = 1 is trivially nonnegative") {
    std::vector<std::vector<double>> one{{1.0, 0.0}};
    std::vector<double> f{0.3, 0.4};
    auto rep = bessel_error_chain(one, f, 0.0);
    CHECK(rep.all_lines_ok);
    CHECK(rep.lines[0].value >= 0.0);
}

TEST_CASE("bessel chain on perturbed systems holds to 1e-9") {
    std::mt19937_64 rng(2024);
    VectorFamily fam = perturbed_orthonormal_family(16, 16, 1e-3, rng);
    std::vector<std::vector<double>> picked(fam.vectors.begin(), fam.vectors.begin() + 8);
    std::vector<double> f = random_vector(16, rng);
    auto rep = bessel_error_chain(picked, f, 1e-3);
    CHECK(rep.all_lines_ok);
    CHECK(rep.contradiction == (rep.norm_f_sq < 8 * rep.eps * rep.eps / 2));
}

TEST_CASE("bessel chain names the offending pair") {
    std::vector<std::vector<double>> bad{{1.0, 0.0}, {1.0, 0.0}};
    std::vector<double> f{1.0, 0.0};
    CHECK_THROWS_WITH_AS(bessel_error_chain(bad, f, 1e-3), doctest::Contains("(0,1)"),
                         precondition_error);
}

TEST_CASE("mixing defect") {
    FiniteAction act = FiniteAction::rotations(5, 5, 1, 0);
    Semigroup z5 = Semigroup::cyclic(5);
    act.validate(z5);

    ElementSet x = ElementSet::full(5);
    ElementSet a = ElementSet::of(5, {0, 1});
    CHECK(mixing_defect(act, a, x, x).max_defect == Rational(0));
    CHECK(mixing_defect(act, ElementSet(5), a, x).max_defect == Rational(0));

    // Hand enumeration: nu(A ∩ (A - g)) for A = {0,1} under rotation.
    auto res = mixing_defect(act, a, a, x);
    for (const auto& [g, defect] : res.per_g) {
        ElementSet shifted(5);
        for (int t = 0; t < 5; ++t)
            if (a.test((t + g) % 5)) shifted.insert(t);
        Rational expect = Rational((a & shifted).count(), 5) - Rational(4, 25);
        if (expect < Rational(0)) expect = Rational(0) - expect;
        CHECK(defect == expect);
    }

    // Swapping A and B preserves the maximum over the full window.
    ElementSet b = ElementSet::of(5, {1, 3});
    CHECK(mixing_defect(act, a, b, x).max_defect == mixing_defect(act, b, a, x).max_defect);
}

TEST_CASE("triple identity on constants and identities") {
    Semigroup z6 = Semigroup::cyclic(6);
    FiniteAction act = FiniteAction::rotations(6, 6, 1, 2);
    std::vector<double> ones(6, 1.0);
    auto rep = triple_identity_check(z6, act, ones, ones, 2, 3);
    CHECK(rep.residual < 1e-12);
    CHECK(rep.lines[0].value == doctest::Approx(1.0));

    std::mt19937_64 rng(5);
    std::vector<double> f1 = random_vector(6, rng), f2 = random_vector(6, rng);
    auto id = triple_identity_check(z6, act, f1, f2, 0, 0);
    std::vector<double> sq1(6), sq2(6);
    for (int i = 0; i < 6; ++i) {
        sq1[size_t(i)] = f1[size_t(i)] * f1[size_t(i)];
        sq2[size_t(i)] = f2[size_t(i)] * f2[size_t(i)];
    }
    double expect = dot(sq1, sq2) / 6.0;
    CHECK(id.lines[0].value == doctest::Approx(expect).epsilon(1e-12));
    CHECK(id.residual < 1e-12);
}

TEST_CASE("triple identity on random commuting rotations") {
    std::mt19937_64 rng(31);
    for (int k = 0; k < 20; ++k) {
        int space = 32;
        Semigroup z8 = Semigroup::cyclic(8);
        FiniteAction act =
            FiniteAction::rotations(space, 8, 4 * int(rng() % 8), 4 * int(rng() % 8));
        std::vector<double> f1 = random_vector(space, rng), f2 = random_vector(space, rng);
        auto rep = triple_identity_check(z8, act, f1, f2, int(rng() % 8), int(rng() % 8));
        CHECK(rep.residual < 1e-9);
    }
}

TEST_CASE("non-commuting actions are rejected with a witness") {
    Semigroup z4 = Semigroup::cyclic(4);
    FiniteAction act;
    act.space = 4;
    act.nu.assign(4, Rational(1, 4));
    act.right.resize(4);
    act.left.emplace(4);
    for (int g = 0; g < 4; ++g) {
        act.right[size_t(g)].resize(4);
        (*act.left)[size_t(g)].resize(4);
        for (int x = 0; x < 4; ++x) {
            act.right[size_t(g)][size_t(x)] = (x + g) % 4;
            // Left action through the swap (0 1)^g: a valid Z4 action that
            // does not commute with rotation.
            int y = x;
            if (g % 2 == 1) y = x == 0 ? 1 : (x == 1 ? 0 : x);
            (*act.left)[size_t(g)][size_t(x)] = y;
        }
    }
    std::vector<double> f(4, 1.0);
    CHECK_THROWS_AS(triple_identity_check(z4, act, f, f, 1, 1), precondition_error);
}

TEST_CASE("weak measurability gate") {
    Semigroup z8 = Semigroup::cyclic(8);
    VectorFamily fam = orthonormal_family(8, 8);

    RecurrenceEngine fre(z8, frechet_oracle(8, 1));
    auto gate = delta_measurability_gate(fre, fam, fam.vectors[0], 0.5, 3);
    CHECK(gate.level_set == ElementSet::of(8, {0}));
    CHECK(gate.small);
    CHECK(gate.passed);

    RecurrenceEngine uni(z8, uniform_oracle(z8));
    auto gate2 = delta_measurability_gate(uni, fam, fam.vectors[0], 0.5, 3);
    CHECK_FALSE(gate2.small);
    CHECK(gate2.recurrent_up_to == 3);
    CHECK(gate2.passed);
}

TEST_CASE("end-to-end vdc experiment stays consistent") {
    // delta-perturbed family over Z32; the hypothesis holds under
    // frechet(32,2) because only h in {0,16} pair identical vectors.
    Semigroup z32 = Semigroup::cyclic(32);
    std::mt19937_64 rng(404);
    const double delta = 1e-3;
    VectorFamily fam = perturbed_orthonormal_family(32, 16, delta, rng);
    FilterOracle oracle = frechet_oracle(32, 2);
    auto hyp = vdc_hypothesis(z32, fam, oracle, 2 * delta);
    CHECK(hyp.satisfied);

    RecurrenceEngine eng(z32, oracle);
    Relation almost_orthogonal(32);
    for (int g1 = 0; g1 < 32; ++g1)
        for (int g2 = 0; g2 < 32; ++g2)
            almost_orthogonal.set(g1, g2, std::abs(dot(fam.at(g1), fam.at(g2))) <= delta);

    // A spiked probe: the bad set {0,16} is Small, the conclusion holds and
    // the contradiction machinery cannot even assemble its clique.
    auto conc = vdc_conclusion(z32, fam, fam.vectors[0], oracle, 0.5);
    CHECK(conc.bad_set == ElementSet::of(32, {0, 16}));
    CHECK(conc.holds);
    CHECK_THROWS_AS(delta_ramsey_witness(eng, almost_orthogonal, conc.bad_set, 1),
                    precondition_error);

    // A diffuse probe keeps the bad set recurrent; the extracted witnesses
    // are pairwise almost orthogonal and the chain shows no contradiction.
    std::vector<double> f(16, 0.0);
    for (int d = 0; d < 16; ++d)
        for (int i = 0; i < 16; ++i) f[size_t(d)] += fam.vectors[size_t(i)][size_t(d)] / 16.0;
    auto conc2 = vdc_conclusion(z32, fam, f, oracle, 1.0 / 32.0);
    if (is_positive(conc2.verdict) && eng.is_recurrent(conc2.bad_set, 3)) {
        auto hyp_r = hypothesis_check(z32, almost_orthogonal, oracle);
        REQUIRE(hyp_r.large);
        RamseyTranscript t = delta_ramsey_witness(eng, almost_orthogonal, conc2.bad_set, 3);
        std::vector<std::vector<double>> picked;
        for (int gi : t.witness) picked.push_back(fam.vectors[size_t(gi)]);
        auto chain = bessel_error_chain(picked, f, delta);
        CHECK(chain.all_lines_ok);
        CHECK_FALSE(chain.contradiction);
    }
}
