#include "deltaset/filters.hpp"

#include <cmath>
#include <map>

namespace deltaset {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Small: return "small";
        case Verdict::Neither: return "neither";
        case Verdict::Large: return "large";
    }
    return "?";
}

std::optional<std::vector<ElementSet>> FilterOracle::large_family() const {
    if (large_enum_) return large_enum_();
    if (carrier_ <= 18) {
        std::vector<ElementSet> out;
        for (uint64_t mask = 0; mask < (uint64_t{1} << carrier_); ++mask) {
            ElementSet s(carrier_);
            for (int i = 0; i < carrier_; ++i)
                if (mask >> i & 1) s.insert(i);
            if (large(s)) out.push_back(std::move(s));
        }
        return out;
    }
    return std::nullopt;
}

FilterOracle uniform_oracle(const Semigroup& s) {
    if (!s.is_group()) throw unsupported_error("uniform_oracle requires a group");
    int n = s.size();
    return FilterOracle(
        nlohmann::json{{"kind", "uniform"}, {"carrier", n}}, n,
        [n](const ElementSet& a) {
            if (a.count() == n) return Verdict::Large;
            if (a.empty()) return Verdict::Small;
            return Verdict::Neither;
        },
        [n]() { return std::vector<ElementSet>{ElementSet::full(n)}; });
}

FilterOracle frechet_oracle(int carrier_size, int k) {
    if (k < 0 || k >= carrier_size)
        throw invalid_input_error("frechet_oracle: need 0 <= k < carrier");
    if (2 * k >= carrier_size)
        throw invalid_input_error("frechet_oracle: k >= n/2 makes Large and Small overlap");
    int n = carrier_size;
    auto enumerate = [n, k]() {
        // All subsets missing at most k points.
        std::vector<ElementSet> out;
        std::vector<int> missing;
        std::function<void(int, int)> rec = [&](int start, int left) {
            ElementSet s = ElementSet::full(n);
            for (int m : missing) s.erase(m);
            out.push_back(std::move(s));
            if (left == 0) return;
            for (int i = start; i < n; ++i) {
                missing.push_back(i);
                rec(i + 1, left - 1);
                missing.pop_back();
            }
        };
        rec(0, k);
        return out;
    };
    return FilterOracle(
        nlohmann::json{{"kind", "frechet"}, {"carrier", n}, {"k", k}}, n,
        [n, k](const ElementSet& a) {
            int c = a.count();
            if (n - c <= k) return Verdict::Large;
            if (c <= k) return Verdict::Small;
            return Verdict::Neither;
        },
        enumerate);
}

FilterOracle density_oracle(const Semigroup& s, double theta) {
    if (!s.is_truncated_nat())
        throw unsupported_error("density_oracle expects a truncated-N carrier");
    if (!(theta > 0.5 && theta <= 1.0))
        throw invalid_input_error("density_oracle: theta must lie in (1/2, 1]");
    int n = s.size();
    return FilterOracle(
        nlohmann::json{{"kind", "density"}, {"carrier", n}, {"theta", theta}}, n,
        [n, theta](const ElementSet& a) {
            double d = double(a.count()) / n;
            if (d >= theta) return Verdict::Large;
            if (d <= 1.0 - theta) return Verdict::Small;
            return Verdict::Neither;
        });
}

FilterOracle ip_star_oracle(const Semigroup& s, int depth, uint64_t node_budget) {
    if (depth < 1) throw invalid_input_error("ip_star_oracle: depth must be >= 1");
    auto carrier = std::make_shared<Semigroup>(s);
    // Keyed by the exact bit blocks; verdicts must never alias.
    auto cache = std::make_shared<std::map<std::vector<uint64_t>, bool>>();
    int n = s.size();
    auto contains_fp = [carrier, cache, depth, node_budget](const ElementSet& a) {
        auto it = cache->find(a.blocks());
        if (it != cache->end()) return it->second;
        auto r = fp_search(*carrier, a, depth, node_budget);
        if (r.status == FpSearchResult::Status::budget_exhausted)
            throw indeterminate_error("ip_star_oracle: search budget exhausted");
        bool found = r.found();
        cache->emplace(a.blocks(), found);
        return found;
    };
    return FilterOracle(
        nlohmann::json{{"kind", "ip_star"}, {"carrier", n}, {"depth", depth}}, n,
        [contains_fp](const ElementSet& a) {
            if (!contains_fp(a)) return Verdict::Small;
            if (!contains_fp(a.complement())) return Verdict::Large;
            return Verdict::Neither;
        });
}

FilterOracle principal_oracle(int carrier_size, int point) {
    if (point < 0 || point >= carrier_size)
        throw invalid_input_error("principal_oracle: point out of range");
    int n = carrier_size;
    auto enumerate = [n, point]() {
        std::vector<ElementSet> out;
        for (uint64_t mask = 0; mask < (uint64_t{1} << (n - 1)); ++mask) {
            ElementSet s(n);
            s.insert(point);
            int bit = 0;
            for (int i = 0; i < n; ++i) {
                if (i == point) continue;
                if (mask >> bit & 1) s.insert(i);
                ++bit;
            }
            out.push_back(std::move(s));
        }
        return out;
    };
    return FilterOracle(
        nlohmann::json{{"kind", "principal"}, {"carrier", n}, {"point", point}}, n,
        [point](const ElementSet& a) {
            return a.test(point) ? Verdict::Large : Verdict::Small;
        },
        n <= 18 ? FilterOracle::LargeEnumFn(enumerate) : nullptr);
}

ElementSet stab_set(const Semigroup& s, const ElementSet& a, const FilterOracle& oracle) {
    ElementSet r(s.size());
    for (int g = 0; g < s.size(); ++g)
        if (oracle.large(translate_preimage(s, a, g))) r.insert(g);
    return r;
}

IpExtraction greedy_ip_extract(const Semigroup& s, const ElementSet& a,
                               const FilterOracle& oracle, int length) {
    if (length < 0) throw invalid_input_error("greedy_ip_extract: negative length");
    IpExtraction out;
    out.sets.push_back(a);
    ElementSet current = a;
    for (int step = 0; step < length; ++step) {
        // Directions inside A_i that keep the derivative positive.
        ElementSet viable(s.size());
        current.for_each([&](int g) {
            if (oracle.positive(derivative(s, current, g))) viable.insert(g);
        });
        ElementSet pool = viable & stab_set(s, current, oracle);
        std::string mode = "stab";
        if (pool.empty()) {
            // No Large translate available; positive directions still
            // sustain the product-set inclusion.
            mode = "delta";
            pool = viable;
        }
        if (pool.empty())
            throw extraction_stuck_error(
                "greedy_ip_extract: no viable direction at step " + std::to_string(step),
                out);
        int g = pool.first();
        out.generators.push_back(g);
        out.step_modes.push_back(mode);
        current = derivative(s, current, g);
        out.sets.push_back(current);
    }
    return out;
}

}  // namespace deltaset
