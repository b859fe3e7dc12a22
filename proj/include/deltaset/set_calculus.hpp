#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "deltaset/semigroup.hpp"

namespace deltaset {

/// Directional derivative d_g A = A ∩ A g^{-1}: the elements of A whose
/// right g-translate stays in A.
ElementSet derivative(const Semigroup& s, const ElementSet& a, int g);

/// Tuple of directions applied first-to-last: steps (h0,...,h_{m-1}) yield
/// d_{h_{m-1}} ... d_{h1} d_{h0} A; the empty tuple is the identity.
struct DerivativePath {
    std::vector<int> steps;
};

ElementSet iterated_derivative(const Semigroup& s, const ElementSet& a, const DerivativePath& p);

/// Product of the elements of seq selected by mask, taken with strictly
/// decreasing indices (highest selected index first). Empty mask means the
/// identity and yields nullopt when the carrier has none to offer the caller.
std::optional<int> subset_product(const Semigroup& s, const std::vector<int>& seq, unsigned mask);

/// FP(seq): all products g_alpha over nonempty index subsets, decreasing
/// order inside each product; the identity joins only on request and only
/// when the carrier declares one. Throws out_of_window_error when a product
/// leaves a truncated carrier.
ElementSet finite_products(const Semigroup& s, const std::vector<int>& seq, bool include_identity);

struct FpSearchResult {
    enum class Status { found, none_exists, budget_exhausted };
    Status status = Status::none_exists;
    std::vector<int> generators;
    uint64_t nodes = 0;

    bool found() const { return status == Status::found; }
};

inline constexpr uint64_t kDefaultFpBudget = 10'000'000;

/// Exhaustive DFS for a length-n sequence whose finite product set lies in A.
/// Candidates shrink by intersecting translate preimages, so each level only
/// scans elements that keep every product so far inside A. Generators may
/// repeat. Ascending candidate order makes the first hit deterministic.
FpSearchResult fp_search(const Semigroup& s, const ElementSet& a, int length,
                         uint64_t node_budget = kDefaultFpBudget);

}  // namespace deltaset
