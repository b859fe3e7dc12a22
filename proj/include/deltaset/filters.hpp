#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "deltaset/set_calculus.hpp"

namespace deltaset {

enum class Verdict { Small, Neither, Large };

inline bool is_large(Verdict v) { return v == Verdict::Large; }
inline bool is_small(Verdict v) { return v == Verdict::Small; }
inline bool is_positive(Verdict v) { return v != Verdict::Small; }

std::string verdict_name(Verdict v);

/// Decision interface standing in for a filter: classifies subsets of a
/// fixed carrier as Large / Small / Neither. Oracles are immutable value
/// types; the descriptor records which (possibly approximate) semantics
/// produced a verdict, so reports can say what they actually measured.
class FilterOracle {
public:
    using VerdictFn = std::function<Verdict(const ElementSet&)>;
    using LargeEnumFn = std::function<std::vector<ElementSet>()>;

    FilterOracle() = default;
    FilterOracle(nlohmann::json descriptor, int carrier, VerdictFn fn,
                 LargeEnumFn large_enum = nullptr)
        : desc_(std::move(descriptor)), carrier_(carrier), fn_(std::move(fn)),
          large_enum_(std::move(large_enum)) {}

    Verdict verdict(const ElementSet& a) const { return fn_(a); }
    bool large(const ElementSet& a) const { return is_large(verdict(a)); }
    bool positive(const ElementSet& a) const { return is_positive(verdict(a)); }

    const nlohmann::json& descriptor() const { return desc_; }
    int carrier() const { return carrier_; }

    /// Complete list of Large subsets when one is cheaply enumerable
    /// (carrier <= 18 exact scan, or an oracle-specific enumerator).
    /// nullopt means the family is not exhaustively available.
    std::optional<std::vector<ElementSet>> large_family() const;

private:
    nlohmann::json desc_;
    int carrier_ = 0;
    VerdictFn fn_;
    LargeEnumFn large_enum_;
};

/// Conull filter of normalized counting measure on a finite group:
/// Large = whole carrier, Small = empty set.
FilterOracle uniform_oracle(const Semigroup& s);

/// Truncated cofinite filter: Large iff |A^c| <= k, Small iff |A| <= k.
/// Rejects 2k >= n, where Large and Small would overlap.
FilterOracle frechet_oracle(int carrier_size, int k);

/// Windowed density filter on a truncated-N carrier: Large iff the density
/// of A on [0,N) is at least theta. theta must exceed 1/2 so that Large
/// sets pairwise intersect.
FilterOracle density_oracle(const Semigroup& s, double theta);

/// Bounded-depth IP* stand-in: Positive iff A contains a finite product set
/// of length depth; Large iff the complement contains none. Budget
/// exhaustion raises indeterminate_error, never a silent verdict.
FilterOracle ip_star_oracle(const Semigroup& s, int depth,
                            uint64_t node_budget = kDefaultFpBudget);

/// Principal ultrafilter at a point: Large iff the set contains it. A
/// genuine filter; also the standard broken fixture for recurrence checks
/// when the point is not the identity.
FilterOracle principal_oracle(int carrier_size, int point);

/// Stab(A) = {g : A g^{-1} is Large}.
ElementSet stab_set(const Semigroup& s, const ElementSet& a, const FilterOracle& oracle);

struct IpExtraction {
    std::vector<int> generators;            // g_0 ... g_{n-1}
    std::vector<ElementSet> sets;           // A_0 ... A_n
    std::vector<std::string> step_modes;    // "stab" or "delta" per step
};

struct extraction_stuck_error : error {
    extraction_stuck_error(std::string msg, IpExtraction p)
        : error(std::move(msg)), partial(std::move(p)) {}
    IpExtraction partial;
};

/// Greedy IP extraction: g_i picked from A_i ∩ Stab(A_i) (ascending), then
/// A_{i+1} = d_{g_i} A_i. When the Stab gate is empty but A_i still has
/// positive derivative directions inside it, extraction continues through
/// those ("delta" mode steps) - the product-set inclusion only needs
/// g_i in A_i and the derivative recursion, so the result contract
/// FP(g_i) ⊆ A survives. Throws extraction_stuck_error with the partial
/// transcript when no direction remains.
IpExtraction greedy_ip_extract(const Semigroup& s, const ElementSet& a,
                               const FilterOracle& oracle, int length);

}  // namespace deltaset
