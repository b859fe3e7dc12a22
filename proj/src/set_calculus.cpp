#include "deltaset/set_calculus.hpp"

namespace deltaset {

ElementSet derivative(const Semigroup& s, const ElementSet& a, int g) {
    return a & translate_preimage(s, a, g);
}

ElementSet iterated_derivative(const Semigroup& s, const ElementSet& a, const DerivativePath& p) {
    ElementSet r = a;
    for (int h : p.steps) r = derivative(s, r, h);
    return r;
}

std::optional<int> subset_product(const Semigroup& s, const std::vector<int>& seq, unsigned mask) {
    std::optional<int> acc;
    for (int i = int(seq.size()) - 1; i >= 0; --i) {
        if (!(mask >> i & 1)) continue;
        acc = acc ? s.product(*acc, seq[size_t(i)]) : seq[size_t(i)];
    }
    return acc;
}

ElementSet finite_products(const Semigroup& s, const std::vector<int>& seq,
                           bool include_identity) {
    if (seq.size() > 24) throw invalid_input_error("finite_products: sequence too long");
    ElementSet r(s.size());
    if (include_identity) {
        if (!s.identity())
            throw unsupported_error("g_empty needs an identity element in the carrier");
        r.insert(*s.identity());
    }
    unsigned total = 1u << seq.size();
    for (unsigned mask = 1; mask < total; ++mask) r.insert(*subset_product(s, seq, mask));
    return r;
}

namespace {

struct FpSearcher {
    const Semigroup& s;
    const ElementSet& a;
    int length;
    uint64_t budget;
    uint64_t nodes = 0;
    bool budget_hit = false;
    std::vector<int> chosen{};
    std::vector<int> products{};  // FP of the chosen prefix, as a list

    bool dfs(int level, const ElementSet& candidates) {
        if (level == length) return true;
        std::vector<int> cand = candidates.to_indices();
        for (int g : cand) {
            if (++nodes > budget) {
                budget_hit = true;
                return false;
            }
            // New products: g itself plus g * p for existing products p.
            // Candidate membership already guarantees they land in A.
            std::vector<int> fresh;
            fresh.push_back(g);
            bool ok = true;
            for (int p : products) {
                auto q = s.try_product(g, p);
                if (!q || !a.test(*q)) {
                    ok = false;  // unreachable when candidates are exact; keep as guard
                    break;
                }
                fresh.push_back(*q);
            }
            if (!ok) continue;
            ElementSet next = candidates;
            for (int p : fresh) next &= translate_preimage(s, a, p);
            size_t base = products.size();
            products.insert(products.end(), fresh.begin(), fresh.end());
            chosen.push_back(g);
            if (dfs(level + 1, next)) return true;
            chosen.pop_back();
            products.resize(base);
            if (budget_hit) return false;
        }
        return false;
    }
};

}  // namespace

FpSearchResult fp_search(const Semigroup& s, const ElementSet& a, int length,
                         uint64_t node_budget) {
    if (length < 1) throw precondition_error("fp_search: length must be >= 1");
    if (a.universe() != s.size()) throw invalid_input_error("fp_search: universe mismatch");
    FpSearcher search{s, a, length, node_budget};
    FpSearchResult r;
    if (search.dfs(0, a)) {
        r.status = FpSearchResult::Status::found;
        r.generators = search.chosen;
    } else if (search.budget_hit) {
        r.status = FpSearchResult::Status::budget_exhausted;
    } else {
        r.status = FpSearchResult::Status::none_exists;
    }
    r.nodes = search.nodes;
    return r;
}

}  // namespace deltaset
