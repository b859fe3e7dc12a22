#include "deltaset/ramsey.hpp"

#include <algorithm>

namespace deltaset {

ElementSet relation_difference_set(const Semigroup& s, const Relation& r, int v) {
    ElementSet out(s.size());
    for (int g = 0; g < s.size(); ++g) {
        auto p = s.try_product(g, v);
        if (p && r(g, *p)) out.insert(g);
    }
    return out;
}

ElementSet relation_translated_set(const Semigroup& s, const Relation& r, int u, int w) {
    ElementSet out(s.size());
    for (int g = 0; g < s.size(); ++g) {
        auto p = s.try_product(g, u);
        if (!p) continue;
        auto q = s.try_product(*p, w);
        if (q && r(*p, *q)) out.insert(g);
    }
    return out;
}

HypothesisResult hypothesis_check(const Semigroup& s, const Relation& r,
                                  const FilterOracle& oracle) {
    HypothesisResult res;
    res.h_set = ElementSet(s.size());
    for (int h = 0; h < s.size(); ++h)
        if (oracle.large(relation_difference_set(s, r, h))) res.h_set.insert(h);
    res.large = oracle.large(res.h_set);
    return res;
}

namespace {

struct RamseySearch {
    RecurrenceEngine& eng;
    const Relation& r;
    int n;
    const RamseyOptions& opts;

    std::vector<int> h;
    std::vector<ElementSet> a_seq;
    std::vector<ElementSet> h_seq;
    RamseyTranscript deepest;

    void snapshot_if_deepest() {
        if (int(h.size()) >= int(deepest.h.size())) {
            deepest.h = h;
            deepest.a_seq = a_seq;
            deepest.h_seq = h_seq;
        }
    }

    bool step(int m) {
        const Semigroup& sg = eng.semigroup();
        if (m == n) return true;
        std::vector<int> candidates = h_seq[size_t(m)].to_indices();
        for (int hm : candidates) {
            ElementSet a_next = derivative(sg, a_seq[size_t(m)], hm);
            bool defined = true;
            for (unsigned mask = 0; mask < (1u << m) && defined; ++mask) {
                std::optional<int> tail = subset_product(sg, h, mask);
                std::optional<int> v;
                if (tail) {
                    v = sg.try_product(hm, *tail);
                    if (!v) defined = false;
                } else {
                    v = hm;
                }
                if (v) a_next &= relation_difference_set(sg, r, *v);
            }
            if (!defined) continue;
            if (!eng.is_recurrent(a_next, n - m - 1)) continue;
            h.push_back(hm);
            a_seq.push_back(std::move(a_next));
            h_seq.push_back(derivative(sg, h_seq[size_t(m)], hm));
            snapshot_if_deepest();
            if (step(m + 1)) return true;
            h.pop_back();
            a_seq.pop_back();
            h_seq.pop_back();
        }
        return false;
    }
};

}  // namespace

RamseyTranscript delta_ramsey_witness(RecurrenceEngine& eng, const Relation& r,
                                      const ElementSet& a, int n, const RamseyOptions& opts) {
    if (n < 0) throw invalid_input_error("delta_ramsey_witness: negative n");
    const Semigroup& sg = eng.semigroup();
    auto hyp = hypothesis_check(sg, r, eng.oracle());
    if (!hyp.large)
        throw hypothesis_violated_error("delta_ramsey_witness: H is not Large");
    if (!eng.is_recurrent(a, n))
        throw precondition_error("delta_ramsey_witness: A is not n-recurrent");

    RamseySearch search{eng, r, n, opts, {}, {a}, {hyp.h_set}, {}};
    search.deepest.n = n;
    search.snapshot_if_deepest();
    if (!search.step(0))
        throw no_witness_error("delta_ramsey_witness: all candidate sequences exhausted",
                               std::move(search.deepest));

    RamseyTranscript t;
    t.n = n;
    t.h = search.h;
    t.a_seq = search.a_seq;
    t.h_seq = search.h_seq;
    t.base_g = t.a_seq.back().first();
    if (t.base_g < 0)
        throw theorem_violation_error("delta_ramsey_witness: positive A_n is empty");
    // g_i = g * h_{n-1} * ... * h_i, built from the top down.
    t.witness.assign(size_t(n) + 1, t.base_g);
    for (int i = n - 1; i >= 0; --i)
        t.witness[size_t(i)] = sg.product(t.witness[size_t(i) + 1], t.h[size_t(i)]);

    if (opts.thickness_diagnostics && sg.size() <= opts.thickness_carrier_limit) {
        for (int m = 0; m <= n; ++m) {
            ThicknessDiagnostic diag;
            diag.m = m;
            try {
                auto res = n_thick_in_delta(eng, t.h_seq[size_t(m)], t.a_seq[size_t(m)], n - m);
                diag.evaluated = true;
                diag.holds = res.value;
                diag.exhaustive = res.exhaustive;
            } catch (const precondition_error&) {
                diag.evaluated = false;
            }
            t.thickness.push_back(diag);
        }
    }
    return t;
}

TranscriptReport verify_transcript(const Semigroup& s, const Relation& r, const ElementSet& a,
                                   const RamseyTranscript& t, const FilterOracle& oracle) {
    TranscriptReport rep;
    auto fail = [&](const std::string& msg) { rep.violations.push_back(msg); };

    int n = t.n;
    if (int(t.h.size()) != n || int(t.a_seq.size()) != n + 1 || int(t.h_seq.size()) != n + 1 ||
        int(t.witness.size()) != n + 1) {
        fail("structural: sequence lengths inconsistent with n");
        return rep;
    }

    RecurrenceEngine fresh(s, oracle);

    // (m.1) nested derivatives and recurrence degrees.
    for (int m = 0; m <= n; ++m) {
        DerivativePath prefix{std::vector<int>(t.h.begin(), t.h.begin() + m)};
        ElementSet bound = iterated_derivative(s, a, prefix);
        if (!bound.contains(t.a_seq[size_t(m)]))
            fail("(m.1) A_" + std::to_string(m) + " not inside the iterated derivative");
        if (!fresh.is_recurrent(t.a_seq[size_t(m)], n - m))
            fail("(m.1) A_" + std::to_string(m) + " is not " + std::to_string(n - m) +
                 "-recurrent");
    }

    // (m.2) slice containments for admissible index pairs.
    for (int m = 0; m <= n; ++m) {
        unsigned full = 1u << std::min(m, 30);
        for (unsigned alpha = 0; alpha < full; ++alpha)
            for (unsigned beta = 1; beta < full; ++beta) {
                if (alpha & beta) continue;
                if (alpha != 0) {
                    int max_beta = 31 - __builtin_clz(beta);
                    int min_alpha = __builtin_ctz(alpha);
                    if (max_beta >= min_alpha) continue;
                }
                auto ha = subset_product(s, t.h, alpha);
                auto hb = subset_product(s, t.h, beta);
                ElementSet slice = ha ? relation_translated_set(s, r, *ha, *hb)
                                      : relation_difference_set(s, r, *hb);
                if (!slice.contains(t.a_seq[size_t(m)]))
                    fail("(m.2) A_" + std::to_string(m) + " escapes slice alpha=" +
                         std::to_string(alpha) + " beta=" + std::to_string(beta));
            }
    }

    // (m.3) all nonempty products h_alpha land in the recomputed H.
    ElementSet h_set(s.size());
    for (int x = 0; x < s.size(); ++x)
        if (oracle.large(relation_difference_set(s, r, x))) h_set.insert(x);
    for (unsigned alpha = 1; alpha < (1u << n); ++alpha) {
        auto ha = subset_product(s, t.h, alpha);
        if (!ha || !h_set.test(*ha))
            fail("(m.3) h_alpha for alpha=" + std::to_string(alpha) + " not in H");
    }

    // H_m bookkeeping.
    for (int m = 0; m <= n; ++m) {
        DerivativePath prefix{std::vector<int>(t.h.begin(), t.h.begin() + m)};
        if (t.h_seq[size_t(m)] != iterated_derivative(s, h_set, prefix))
            fail("H_" + std::to_string(m) + " differs from the iterated derivative of H");
    }

    // Witness structure, membership and the clique condition.
    if (t.base_g < 0 || !t.a_seq[size_t(n)].test(t.base_g))
        fail("witness: base g is not in A_n");
    std::vector<int> expect(size_t(n) + 1, t.base_g);
    bool products_ok = true;
    for (int i = n - 1; i >= 0 && products_ok; --i) {
        auto p = s.try_product(expect[size_t(i) + 1], t.h[size_t(i)]);
        if (!p) {
            fail("witness: product out of window");
            products_ok = false;
        } else {
            expect[size_t(i)] = *p;
        }
    }
    if (products_ok && expect != t.witness) fail("witness: g_i != g * h_{alpha_i}");
    for (int i = 0; i <= n; ++i)
        if (!a.test(t.witness[size_t(i)]))
            fail("witness: g_" + std::to_string(i) + " outside A");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!r(t.witness[size_t(j)], t.witness[size_t(i)]))
                fail("clique: R(g_" + std::to_string(j) + ", g_" + std::to_string(i) +
                     ") fails");
    return rep;
}

std::optional<std::vector<int>> brute_force_clique(const Relation& r, const ElementSet& a,
                                                   int n, uint64_t budget) {
    if (n < 0) throw invalid_input_error("brute_force_clique: negative n");
    std::vector<int> pool = a.to_indices();
    std::vector<int> chosen;
    uint64_t nodes = 0;
    bool exceeded = false;

    // Lexicographic DFS; each new entry checks its pairs against the prefix.
    std::function<bool()> rec = [&]() {
        if (int(chosen.size()) == n + 1) return true;
        for (int g : pool) {
            if (++nodes > budget) {
                exceeded = true;
                return false;
            }
            bool ok = true;
            for (int prev : chosen)
                if (!r(g, prev)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            chosen.push_back(g);
            if (rec()) return true;
            chosen.pop_back();
            if (exceeded) return false;
        }
        return false;
    };
    if (rec()) return chosen;
    if (exceeded)
        throw indeterminate_error("brute_force_clique: node budget exhausted");
    return std::nullopt;
}

}  // namespace deltaset
