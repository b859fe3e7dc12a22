#include "deltaset/suite.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "deltaset/generators.hpp"
#include "deltaset/runner.hpp"

namespace deltaset {

namespace {

std::vector<ElementSet> all_subsets(int n) {
    std::vector<ElementSet> out;
    out.reserve(size_t(1) << n);
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
        ElementSet s(n);
        for (int i = 0; i < n; ++i)
            if (mask >> i & 1) s.insert(i);
        out.push_back(std::move(s));
    }
    return out;
}

struct Tally {
    int violations = 0;
    std::string first;
    void add(const std::string& what) {
        if (violations == 0) first = what;
        ++violations;
    }
};

// --- criterion 1 -----------------------------------------------------------

CriterionResult criterion_algebra() {
    CriterionResult res{1, "derivative algebra on Z4 (mixed/superassoc/subcommute/subassoc)",
                        false, "", 0.0};
    Tally tally;
    Semigroup z4 = Semigroup::cyclic(4);
    auto subsets = all_subsets(4);

    for (const auto& a : subsets)
        for (int g = 0; g < 4; ++g)
            for (int h = 0; h < 4; ++h) {
                if (derivative(z4, derivative(z4, a, h), g) !=
                    derivative(z4, derivative(z4, a, g), h))
                    tally.add("mixed derivatives differ");
                if (!derivative(z4, a, z4.product(h, g))
                         .contains(derivative(z4, derivative(z4, a, g), h)))
                    tally.add("superassociativity fails");
            }

    std::vector<FilterOracle> oracles{uniform_oracle(z4), frechet_oracle(4, 1)};
    for (const auto& oracle : oracles) {
        RecurrenceEngine eng(z4, oracle);
        for (const auto& a : subsets) {
            for (int g = 0; g < 4; ++g)
                for (int n = 0; n <= 3; ++n)
                    if (!derivative(z4, eng.delta_set(a, n), g)
                             .contains(eng.delta_set(derivative(z4, a, g), n)))
                        tally.add("subcommutation fails");
            for (int n = 0; n <= 3; ++n)
                for (int m = 0; n + m <= 3; ++m)
                    if (!eng.delta_set(eng.delta_set(a, m), n).contains(eng.delta_set(a, n + m)))
                        tally.add("subassociativity fails");
        }
    }
    res.pass = tally.violations == 0;
    res.detail = res.pass ? "0 violations" : tally.first;
    return res;
}

// --- criterion 2 -----------------------------------------------------------

CriterionResult criterion_delta_laws() {
    CriterionResult res{2, "Delta-set corollary and main property on Z5/frechet(5,1)", false,
                        "", 0.0};
    Tally tally;
    Semigroup z5 = Semigroup::cyclic(5);
    RecurrenceEngine eng(z5, frechet_oracle(5, 1));
    for (const auto& a : all_subsets(5)) {
        for (int n = 1; n <= 3; ++n) {
            if (!eng.delta_set(eng.delta_set(a, 1), n - 1).contains(eng.delta_set(a, n)))
                tally.add("Delta^{n-1}(Delta(A)) fails to contain Delta^n(A)");
            if (eng.is_recurrent(a, n)) {
                ElementSet delta_a = eng.delta_set(a, 1);
                eng.delta_set(a, n).for_each([&](int g) {
                    if (!derivative(z5, delta_a, g)
                             .contains(eng.delta_set(derivative(z5, a, g), 1)))
                        tally.add("main property fails pointwise");
                });
            }
        }
    }
    res.pass = tally.violations == 0;
    res.detail = res.pass ? "0 violations" : tally.first;
    return res;
}

// --- criterion 3 -----------------------------------------------------------

CriterionResult criterion_qrec(const AcceptanceOptions& opts) {
    CriterionResult res{3, "quantitative recurrence bound over the catalog", false, "", 0.0};
    Tally tally;
    std::vector<Semigroup> catalog;
    for (int n = 1; n <= 12; ++n) catalog.push_back(Semigroup::cyclic(n));
    catalog.push_back(Semigroup::symmetric_3());
    catalog.push_back(Semigroup::dihedral_4());
    catalog.push_back(Semigroup::quaternion_8());

    int checked = 0;
    for (const auto& g : catalog) {
        SubadditiveMeasure mu = counting_measure(g);
        auto run_one = [&](const ElementSet& a) {
            if (a.empty()) return;
            ++checked;
            try {
                auto q = quantitative_recurrence(g, mu, a);
                if (q.good_h.empty()) tally.add("empty good_h on " + g.name());
            } catch (const error& e) {
                tally.add(std::string("qrec failed on ") + g.name() + ": " + e.what());
            }
        };
        if (g.size() <= 8) {
            for (const auto& a : all_subsets(g.size())) run_one(a);
        } else {
            std::mt19937_64 rng(uint64_t(g.size()) * 977);
            for (int k = 0; k < 10000; ++k) run_one(random_subset(g.size(), rng));
        }
    }

    // Spot value, recorded in the golden file.
    Semigroup z5 = Semigroup::cyclic(5);
    auto q = quantitative_recurrence(z5, counting_measure(z5), ElementSet::of(5, {0, 1}));
    if (!(q.bound == Rational(4, 75))) tally.add("Z5 spot bound != 4/75");
    if (q.good_h != ElementSet::of(5, {0, 1, 4})) tally.add("Z5 spot good_h != {0,1,4}");
    if (!opts.golden_dir.empty()) {
        std::ifstream in(opts.golden_dir + "/qrec_z5.json");
        if (!in) {
            tally.add("golden file missing: qrec_z5.json");
        } else {
            json golden = json::parse(in);
            if (set_to_json(q.good_h) != golden.at("good_h") ||
                q.bound.num != golden.at("bound").at("num").get<long long>() ||
                q.bound.den != golden.at("bound").at("den").get<long long>())
                tally.add("golden file mismatch for the Z5 spot value");
        }
    }

    res.pass = tally.violations == 0;
    res.detail = res.pass ? "0 violations over " + std::to_string(checked) + " subsets"
                          : tally.first;
    return res;
}

// --- criterion 4 -----------------------------------------------------------

CriterionResult criterion_ramsey() {
    CriterionResult res{4, "Delta-Ramsey extraction vs brute-force clique search", false, "",
                        0.0};
    Tally tally;
    struct Case {
        int order;
        int n;
    };
    for (Case c : {Case{5, 2}, Case{7, 3}, Case{11, 3}}) {
        Semigroup g = Semigroup::cyclic(c.order);
        FilterOracle oracle = frechet_oracle(c.order, 1);
        RecurrenceEngine eng(g, oracle);
        ElementSet full = g.full_set();
        for (uint64_t seed = 0; seed < 100; ++seed) {
            std::mt19937_64 rng(seed * 1000003 + uint64_t(c.order));
            Relation r = random_hypothesis_relation(g, rng);
            auto hyp = hypothesis_check(g, r, oracle);
            if (!hyp.large) {
                tally.add("generator produced a hypothesis-violating relation");
                continue;
            }
            bool extractor_found = false;
            try {
                RamseyTranscript t = delta_ramsey_witness(eng, r, full, c.n);
                extractor_found = true;
                auto rep = verify_transcript(g, r, full, t, oracle);
                if (!rep.ok())
                    tally.add("verify_transcript: " + rep.violations.front());
            } catch (const no_witness_error&) {
                extractor_found = false;
            }
            auto brute = brute_force_clique(r, full, c.n);
            if (brute.has_value() && !extractor_found)
                tally.add("extractor missed a clique that exists (Z" +
                          std::to_string(c.order) + " seed " + std::to_string(seed) + ")");
            if (!brute.has_value() && extractor_found)
                tally.add("extractor fabricated a clique (Z" + std::to_string(c.order) +
                          " seed " + std::to_string(seed) + ")");
        }
    }
    res.pass = tally.violations == 0;
    res.detail = res.pass ? "300 instances, extractor and oracle agree" : tally.first;
    return res;
}

// --- criterion 5 -----------------------------------------------------------

CriterionResult criterion_ip_extract() {
    CriterionResult res{5, "greedy IP extraction on cofinite subsets of Z16", false, "", 0.0};
    Tally tally;
    Semigroup z16 = Semigroup::cyclic(16);
    FilterOracle oracle = frechet_oracle(16, 1);
    std::vector<ElementSet> cofinite{z16.full_set()};
    for (int x = 0; x < 16; ++x) {
        ElementSet a = z16.full_set();
        a.erase(x);
        cofinite.push_back(a);
    }
    for (const auto& a : cofinite) {
        try {
            IpExtraction ext = greedy_ip_extract(z16, a, oracle, 3);
            // Independent membership re-check of every nonempty product.
            for (unsigned mask = 1; mask < (1u << ext.generators.size()); ++mask) {
                auto p = subset_product(z16, ext.generators, mask);
                if (!p || !a.test(*p)) tally.add("product escapes A");
            }
            if (!a.contains(finite_products(z16, ext.generators, false)))
                tally.add("FP(generators) not inside A");
        } catch (const extraction_stuck_error&) {
            tally.add("extraction stuck on a cofinite set");
        }
    }
    res.pass = tally.violations == 0;
    res.detail = res.pass ? "17/17 cofinite sets extracted at length 3" : tally.first;
    return res;
}

// --- criterion 6 -----------------------------------------------------------

CriterionResult criterion_vdc() {
    CriterionResult res{6, "Bessel error chain on delta-perturbed orthonormal systems", false,
                        "", 0.0};
    Tally tally;
    const double delta = 1e-3;
    const int dim = 16, n_pick = 8;
    Semigroup z32 = Semigroup::cyclic(32);
    for (uint64_t seed = 0; seed < 50; ++seed) {
        std::mt19937_64 rng(seed * 7919 + 13);
        VectorFamily fam = perturbed_orthonormal_family(z32.size(), dim, delta, rng);
        std::vector<std::vector<double>> picked(fam.vectors.begin(),
                                                fam.vectors.begin() + n_pick);
        // Two probes: a spread combination and a single spiked direction.
        std::vector<std::vector<double>> probes;
        std::vector<double> spread(size_t(dim), 0.0);
        for (int i = 0; i < n_pick; ++i)
            for (int d = 0; d < dim; ++d)
                spread[size_t(d)] += picked[size_t(i)][size_t(d)] / double(n_pick);
        probes.push_back(spread);
        std::vector<double> spike = random_vector(dim, rng, 0.5);
        probes.push_back(spike);
        for (const auto& f : probes) {
            try {
                auto rep = bessel_error_chain(picked, f, delta, 1e-9);
                if (!rep.all_lines_ok) tally.add("a chain line failed its tolerance");
                // Recompute the threshold from the raw vectors, independent
                // of the report's own fields.
                double eps_indep = std::abs(dot(f, picked[0]));
                for (const auto& e : picked)
                    eps_indep = std::min(eps_indep, std::abs(dot(f, e)));
                bool expect = norm_sq(f) < double(n_pick) * eps_indep * eps_indep / 2.0;
                if (rep.contradiction != expect)
                    tally.add("contradiction flag inconsistent with the threshold");
                if (rep.contradiction && rep.all_lines_ok && rep.delta_premise_ok)
                    tally.add("impossible chain: contradiction with all lines holding");
            } catch (const precondition_error& e) {
                tally.add(std::string("precondition: ") + e.what());
            }
        }
    }
    res.pass = tally.violations == 0;
    res.detail = res.pass ? "50 families x 2 probes, 0 anomalies" : tally.first;
    return res;
}

// --- criterion 7 -----------------------------------------------------------

CriterionResult criterion_triple() {
    CriterionResult res{7, "double-to-triple identity chain on commuting rotations", false, "",
                        0.0};
    Tally tally;
    for (uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed * 6151 + 101);
        int space = 2 + int(rng() % 31);   // |X| <= 32
        Semigroup g = Semigroup::cyclic(space);
        FiniteAction act = FiniteAction::rotations(space, space, int(rng() % space),
                                                   int(rng() % space));
        std::vector<double> f1 = random_vector(space, rng);
        std::vector<double> f2 = random_vector(space, rng);
        int ga = int(rng() % space), hb = int(rng() % space);
        auto rep = triple_identity_check(g, act, f1, f2, ga, hb);
        if (rep.residual >= 1e-9)
            tally.add("residual " + std::to_string(rep.residual) + " at seed " +
                      std::to_string(seed));
    }
    res.pass = tally.violations == 0;
    res.detail = res.pass ? "100 instances, residual < 1e-9" : tally.first;
    return res;
}

// --- criterion 8 -----------------------------------------------------------

CriterionResult criterion_respects() {
    CriterionResult res{8, "respects-recurrence scans pass; broken fixture is flagged", false,
                        "", 0.0};
    Tally tally;
    for (int n = 2; n <= 5; ++n) {
        Semigroup g = Semigroup::cyclic(n);
        RecurrenceEngine eng(g, uniform_oracle(g));
        auto rep = respects_recurrence_check(eng, 2);
        if (!rep.ok()) tally.add("uniform oracle flagged on Z" + std::to_string(n));
    }
    for (int n = 3; n <= 5; ++n) {
        Semigroup g = Semigroup::cyclic(n);
        RecurrenceEngine eng(g, frechet_oracle(n, 1));
        auto rep = respects_recurrence_check(eng, 2);
        if (!rep.ok()) tally.add("frechet oracle flagged on Z" + std::to_string(n));
    }
    // Cyclic table with the identity relocated to index 2; "Large = contains
    // 0" is then a principal filter at a non-identity point, which fails to
    // respect recurrence.
    std::vector<std::vector<int>> shifted(5, std::vector<int>(5));
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) shifted[size_t(a)][size_t(b)] = (a + b + 3) % 5;
    Semigroup fixture = Semigroup::from_table("Z5_shifted", shifted, 2);
    RecurrenceEngine broken(fixture, principal_oracle(5, 0));
    auto rep = respects_recurrence_check(broken, 2);
    if (rep.ok())
        tally.add("broken principal fixture was not flagged");
    else if (rep.violations.front().set_a.empty())
        tally.add("violation without a concrete witness");
    res.pass = tally.violations == 0;
    res.detail = res.pass
                     ? "uniform/frechet clean; fixture flagged with witness"
                     : tally.first;
    return res;
}

// --- criterion 9 -----------------------------------------------------------

CriterionResult criterion_determinism() {
    CriterionResult res{9, "byte-identical payloads on re-run with the same seed", false, "",
                        0.0};
    Tally tally;
    std::vector<json> configs;
    configs.push_back(json{{"semigroup", {{"kind", "cyclic"}, {"n", 6}}},
                           {"task", "derive"},
                           {"params", {{"set", {0, 1, 2}}, {"direction", 1}}}});
    configs.push_back(json{{"semigroup", {{"kind", "cyclic"}, {"n", 5}}},
                           {"oracle", {{"kind", "uniform"}}},
                           {"task", "delta"},
                           {"params", {{"set", {0, 1}}, {"max_n", 2}}}});
    configs.push_back(json{{"semigroup", {{"kind", "cyclic"}, {"n", 5}}},
                           {"oracle", {{"kind", "frechet"}, {"k", 1}}},
                           {"task", "recur"},
                           {"params",
                            {{"set", {0, 1, 2}}, {"n", 1}, {"respects", {{"max_n", 1}}}}},
                           {"seed", 3}});
    configs.push_back(json{{"semigroup", {{"kind", "cyclic"}, {"n", 5}}},
                           {"oracle", {{"kind", "uniform"}}},
                           {"task", "tree"},
                           {"params", {{"set", {0, 1}}, {"max_depth", 2}}}});
    configs.push_back(json{{"semigroup", {{"kind", "cyclic"}, {"n", 7}}},
                           {"oracle", {{"kind", "frechet"}, {"k", 1}}},
                           {"task", "ramsey"},
                           {"params",
                            {{"relation", {{"generator", {{"seed", 7}}}}},
                             {"n", 2},
                             {"brute_check", true},
                             {"thickness", true}}},
                           {"seed", 7}});
    configs.push_back(json{{"semigroup", {{"kind", "cyclic"}, {"n", 5}}},
                           {"measure", {{"kind", "counting"}}},
                           {"task", "qrec"},
                           {"params",
                            {{"set", {0, 1}}, {"union_gs", {0, 1, 2}}, {"fp_length", 2}}}});
    configs.push_back(json{{"semigroup", {{"kind", "cyclic"}, {"n", 8}}},
                           {"oracle", {{"kind", "frechet"}, {"k", 1}}},
                           {"task", "vdc"},
                           {"params",
                            {{"family", {{"generator", {{"seed", 11}, {"dim", 8}}}}},
                             {"eps", 0.1},
                             {"chain", {{"indices", {0, 1, 2, 3}}, {"delta", 1e-3}}},
                             {"gate", {{"eps", 0.25}, {"max_n", 2}}}}},
                           {"seed", 11}});
    configs.push_back(json{{"semigroup", {{"kind", "cyclic"}, {"n", 6}}},
                           {"measure", {{"kind", "counting"}}},
                           {"task", "audit"},
                           {"params", json::object()}});
    json evens = json::array();
    for (int i = 0; i < 100; i += 2) evens.push_back(i);
    configs.push_back(json{{"semigroup", {{"kind", "truncated_nat"}, {"horizon", 100}}},
                           {"task", "density"},
                           {"params",
                            {{"set", evens},
                             {"windows", {{0, 10}, {0, 50}, {0, 100}}}}}});

    for (const auto& cfg : configs) {
        auto first = run_experiment(cfg);
        auto second = run_experiment(cfg);
        if (first.payload.dump() != second.payload.dump())
            tally.add("payload differs for task " + cfg.at("task").get<std::string>());
        if (first.exit_code != 0)
            tally.add("task " + cfg.at("task").get<std::string>() + " failed: " +
                      first.payload.dump());
    }
    res.pass = tally.violations == 0;
    res.detail = res.pass ? std::to_string(configs.size()) + " configs reproduced byte-for-byte"
                          : tally.first;
    return res;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& selector,
                                            const AcceptanceOptions& opts) {
    struct Entry {
        std::string key;
        CriterionResult (*fn)();
    };
    std::vector<CriterionResult> out;
    auto want = [&](const std::string& key) { return selector == "all" || selector == key; };
    auto timed = [&](auto&& fn) {
        auto start = std::chrono::steady_clock::now();
        CriterionResult r = fn();
        auto end = std::chrono::steady_clock::now();
        r.seconds = std::chrono::duration<double>(end - start).count();
        return r;
    };

    if (want("algebra")) {
        auto r = timed(criterion_algebra);
        if (r.seconds >= 10.0) {
            r.pass = false;
            r.detail += " (runtime limit 10 s exceeded)";
        }
        out.push_back(r);
    }
    if (want("delta")) out.push_back(timed(criterion_delta_laws));
    if (want("qrec")) {
        auto r = timed([&] { return criterion_qrec(opts); });
        if (r.seconds >= 60.0) {
            r.pass = false;
            r.detail += " (runtime limit 60 s exceeded)";
        }
        out.push_back(r);
    }
    if (want("ramsey")) {
        auto r = timed(criterion_ramsey);
        if (r.seconds >= 120.0) {
            r.pass = false;
            r.detail += " (runtime limit 120 s exceeded)";
        }
        out.push_back(r);
    }
    if (want("ip")) out.push_back(timed(criterion_ip_extract));
    if (want("vdc")) out.push_back(timed(criterion_vdc));
    if (want("triple")) out.push_back(timed(criterion_triple));
    if (want("respects")) out.push_back(timed(criterion_respects));
    if (want("determinism")) out.push_back(timed(criterion_determinism));
    if (out.empty()) throw invalid_input_error("unknown acceptance selector: " + selector);
    return out;
}

json acceptance_matrix_json(const std::vector<CriterionResult>& results) {
    json arr = json::array();
    bool all = true;
    for (const auto& r : results) {
        arr.push_back(json{{"id", r.id},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"seconds", r.seconds}});
        all = all && r.pass;
    }
    return json{{"criteria", std::move(arr)}, {"all_pass", all}};
}

}  // namespace deltaset
