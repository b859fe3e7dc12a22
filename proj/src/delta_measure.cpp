#include "deltaset/delta_measure.hpp"

#include <random>

namespace deltaset {

SubadditiveMeasure counting_measure(const Semigroup& s) {
    if (!s.is_group()) throw unsupported_error("counting_measure requires a group");
    long long n = s.size();
    return SubadditiveMeasure(
        nlohmann::json{{"kind", "counting"}, {"carrier", s.size()}}, s.size(),
        [n](const ElementSet& a) { return Rational(a.count(), n); });
}

SubadditiveMeasure upper_density_measure(const Semigroup& s,
                                         const std::vector<ElementSet>& windows) {
    if (windows.empty()) throw invalid_input_error("upper_density: no windows supplied");
    for (const auto& w : windows) {
        if (w.empty()) throw invalid_input_error("upper_density: empty window");
        if (w.universe() != s.size())
            throw invalid_input_error("upper_density: window outside carrier");
    }
    auto wins = windows;
    return SubadditiveMeasure(
        nlohmann::json{{"kind", "upper_density"}, {"carrier", s.size()},
                       {"windows", int(windows.size())}},
        s.size(), [wins](const ElementSet& a) {
            Rational best(0);
            for (const auto& w : wins) {
                Rational d(Rational((a & w).count(), w.count()));
                if (d > best) best = d;
            }
            return best;
        });
}

DensityResult upper_density(const ElementSet& a, const std::vector<ElementSet>& windows) {
    if (windows.empty()) throw invalid_input_error("upper_density: no windows supplied");
    DensityResult r;
    r.value = Rational(0);
    r.windows_used = int(windows.size());
    for (const auto& w : windows) {
        if (w.empty()) throw invalid_input_error("upper_density: empty window");
        Rational d((a & w).count(), w.count());
        r.per_window.push_back(d);
        if (d > r.value) r.value = d;
    }
    return r;
}

FilterOracle measure_conull_oracle(const SubadditiveMeasure& mu) {
    SubadditiveMeasure m = mu;
    nlohmann::json desc{{"kind", "conull"}, {"measure", mu.descriptor()}};
    return FilterOracle(desc, mu.carrier(), [m](const ElementSet& a) {
        if (m.value(a).num == 0) return Verdict::Small;
        if (m.value(a.complement()).num == 0) return Verdict::Large;
        return Verdict::Neither;
    });
}

// ---------------------------------------------------------------------------

namespace {

std::vector<ElementSet> audit_scope(int n, int sample_budget, uint64_t seed, bool& exhaustive) {
    std::vector<ElementSet> sets;
    if (n <= 8) {
        exhaustive = true;
        for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
            ElementSet s(n);
            for (int i = 0; i < n; ++i)
                if (mask >> i & 1) s.insert(i);
            sets.push_back(std::move(s));
        }
    } else {
        exhaustive = false;
        std::mt19937_64 rng(seed);
        for (int k = 0; k < sample_budget; ++k) {
            ElementSet s(n);
            uint64_t word = 0;
            int left = 0;
            for (int i = 0; i < n; ++i) {
                if (left == 0) {
                    word = rng();
                    left = 64;
                }
                if (word & 1) s.insert(i);
                word >>= 1;
                --left;
            }
            sets.push_back(std::move(s));
        }
    }
    return sets;
}

std::string set_str(const ElementSet& s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](int i) {
        if (!first) out += ",";
        out += std::to_string(i);
        first = false;
    });
    return out + "}";
}

}  // namespace

MeasureAuditReport delta_measure_audit(const Semigroup& s, const SubadditiveMeasure& mu,
                                       int sample_budget, uint64_t seed) {
    MeasureAuditReport rep;
    int n = s.size();
    auto note = [&](const std::string& v) {
        if (rep.violations.size() < 32) rep.violations.push_back(v);
    };

    if (mu.value(ElementSet(n)) != Rational(0)) {
        rep.endpoints_ok = false;
        note("mu(empty) != 0");
    }
    if (mu.value(ElementSet::full(n)) != Rational(1)) {
        rep.endpoints_ok = false;
        note("mu(carrier) != 1");
    }

    auto sets = audit_scope(n, sample_budget, seed, rep.exhaustive);

    // (ii) monotone and (iii) subadditive on pairs; pair scope is quadratic,
    // so cap it when sampling.
    size_t pair_cap = rep.exhaustive ? sets.size() : 64;
    for (size_t i = 0; i < sets.size() && i < pair_cap; ++i)
        for (size_t j = 0; j < sets.size() && j < pair_cap; ++j) {
            ++rep.pairs_checked;
            const ElementSet& a = sets[i];
            const ElementSet& b = sets[j];
            if (a.contains(b) && !(mu.value(b) <= mu.value(a))) {
                rep.monotone_ok = false;
                note("monotonicity fails at A=" + set_str(b) + " B=" + set_str(a));
            }
            if (!(mu.value(a | b) <= mu.value(a) + mu.value(b))) {
                rep.subadditive_ok = false;
                note("subadditivity fails at A=" + set_str(a) + " B=" + set_str(b));
            }
        }

    // (iv) almost invariance: for each set, the g that shift its value must
    // form a mu-null exception set.
    for (const auto& a : sets) {
        ElementSet bad(n);
        for (int g = 0; g < n; ++g)
            if (mu.value(translate_preimage(s, a, g)) != mu.value(a)) bad.insert(g);
        if (mu.value(bad).num != 0) {
            rep.almost_invariant_ok = false;
            note("almost invariance fails for A=" + set_str(a) + ", bad g=" + set_str(bad));
        }
    }

    // (v) additivity on pairwise almost-disjoint translate families.
    std::vector<std::vector<int>> tuples;
    if (n <= 8) {
        for (int g0 = 0; g0 < n; ++g0)
            for (int g1 = g0 + 1; g1 < n; ++g1) {
                tuples.push_back({g0, g1});
                for (int g2 = g1 + 1; g2 < n; ++g2) tuples.push_back({g0, g1, g2});
            }
    } else {
        std::mt19937_64 rng(seed + 1);
        for (int k = 0; k < sample_budget; ++k)
            tuples.push_back({int(rng() % n), int(rng() % n)});
    }
    for (const auto& a : sets) {
        if (a.empty()) continue;
        for (const auto& tup : tuples) {
            std::vector<ElementSet> tr;
            for (int g : tup) tr.push_back(translate_preimage(s, a, g));
            bool almost_disjoint = true;
            Rational sum(0);
            ElementSet uni(n);
            for (size_t i = 0; i < tr.size() && almost_disjoint; ++i) {
                sum = sum + mu.value(tr[i]);
                uni |= tr[i];
                for (size_t j = i + 1; j < tr.size(); ++j)
                    if (mu.value(tr[i] & tr[j]).num != 0) {
                        almost_disjoint = false;
                        break;
                    }
            }
            if (!almost_disjoint) continue;
            if (mu.value(uni) != sum) {
                rep.translate_additive_ok = false;
                note("translate additivity fails for A=" + set_str(a) + " gs=" +
                     set_str(ElementSet::from_indices(n, tup)));
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

QuantitativeRecurrence quantitative_recurrence(const Semigroup& s,
                                               const SubadditiveMeasure& mu,
                                               const ElementSet& a) {
    QuantitativeRecurrence q;
    q.mu_a = mu.value(a);
    if (q.mu_a.num == 0)
        throw precondition_error("quantitative_recurrence: mu(A) must be positive");
    q.bound = q.mu_a * q.mu_a / Rational(3);
    q.ramsey_n = (Rational(3) / q.mu_a).ceil();
    q.good_h = ElementSet(s.size());
    for (int h = 0; h < s.size(); ++h) {
        Rational v = mu.value(derivative(s, a, h));
        q.per_h.push_back(v);
        if (v >= q.bound) q.good_h.insert(h);
    }
    FilterOracle conull = measure_conull_oracle(mu);
    if (!conull.positive(q.good_h))
        throw theorem_violation_error(
            "quantitative_recurrence: good set is not positive; measure is not a "
            "Delta-measure on this input");
    return q;
}

UnionBoundReport union_bound_check(const Semigroup& s, const SubadditiveMeasure& mu,
                                   const ElementSet& a, const std::vector<int>& gs) {
    UnionBoundReport r;
    std::vector<ElementSet> tr;
    for (int g : gs) tr.push_back(translate_preimage(s, a, g));
    ElementSet uni(s.size());
    r.sum_singles = Rational(0);
    r.sum_pairs = Rational(0);
    for (size_t i = 0; i < tr.size(); ++i) {
        uni |= tr[i];
        r.sum_singles = r.sum_singles + mu.value(tr[i]);
        for (size_t j = i + 1; j < tr.size(); ++j)
            r.sum_pairs = r.sum_pairs + mu.value(tr[i] & tr[j]);
    }
    r.lhs = mu.value(uni);
    r.rhs = r.sum_singles - r.sum_pairs;
    r.slack = r.lhs - r.rhs;
    r.holds = r.lhs >= r.rhs;
    return r;
}

FpShiftCertificate fp_shift_corollary_check(const Semigroup& s, const SubadditiveMeasure& mu,
                                            const ElementSet& a, int length) {
    if (mu.value(a).num == 0)
        throw precondition_error("fp_shift_corollary_check: mu(A) must be positive");
    FilterOracle conull = measure_conull_oracle(mu);
    FpShiftCertificate cert;
    ElementSet core = a;
    for (int step = 0; step < length; ++step) {
        int chosen = -1;
        for (int h = 0; h < s.size(); ++h) {
            if (conull.positive(derivative(s, core, h))) {
                chosen = h;
                break;
            }
        }
        if (chosen < 0) break;  // finite carrier bounds the achievable length
        cert.directions.push_back(chosen);
        core = derivative(s, core, chosen);
        ++cert.achieved;
    }
    cert.complete = cert.achieved == length;
    cert.final_core = core;
    cert.shift_g = core.first();
    return cert;
}

}  // namespace deltaset
