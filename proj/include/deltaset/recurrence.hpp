#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "deltaset/filters.hpp"

namespace deltaset {

/// Computes Delta^n sets and n-recurrence over one (carrier, oracle) pair.
/// The recursion re-derives the same subproblems exponentially often, so
/// results are memoized by (set bits, degree); entries are write-once.
class RecurrenceEngine {
public:
    RecurrenceEngine(const Semigroup& s, FilterOracle oracle)
        : sg_(&s), oracle_(std::move(oracle)) {}

    const Semigroup& semigroup() const { return *sg_; }
    const FilterOracle& oracle() const { return oracle_; }

    Verdict verdict(const ElementSet& a) const { return oracle_.verdict(a); }

    /// Delta^n(A); n = 0 returns A itself.
    ElementSet delta_set(const ElementSet& a, int n);

    /// Delta^n(A) positive. n = 0 degenerates to plain positivity.
    bool is_recurrent(const ElementSet& a, int n);

private:
    struct Key {
        ElementSet set;
        int degree;
        bool operator==(const Key& o) const { return degree == o.degree && set == o.set; }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            return size_t(k.set.hash() * 1099511628211ull) ^ size_t(k.degree);
        }
    };

    const Semigroup* sg_;
    FilterOracle oracle_;
    std::unordered_map<Key, ElementSet, KeyHash> memo_;
};

/// Degrees 0..max_n of one set: each Delta^n with its verdict.
struct RecurrenceProfile {
    ElementSet set;
    std::vector<ElementSet> delta_sets;   // index n
    std::vector<Verdict> verdicts;
    std::vector<bool> recurrent;
};

RecurrenceProfile recurrence_profile(RecurrenceEngine& eng, const ElementSet& a, int max_n);

// ---------------------------------------------------------------------------
// Derivation trees

struct TreeNode {
    std::vector<int> path;     // derivative tuple s
    ElementSet derived;        // d_s A
    ElementSet ext;            // extensions; empty for leaves and frontier nodes
    bool leaf = false;         // exact: no extension exists in the full tree
    bool frontier = false;     // cut by the depth bound or node budget
    int parent = -1;
};

struct DerivationTree {
    ElementSet root;
    int max_depth = 0;
    bool budget_hit = false;
    std::vector<TreeNode> nodes;   // breadth-first; empty when A is small

    /// Max |s| over explored nodes (-1 for the empty tree) and whether the
    /// bound is exact or only a lower estimate (a frontier node exists).
    int depth_max = -1;
    bool depth_max_exact = true;
    /// Min |s| over exact leaves (-1 when none found) with the same caveat.
    int leaf_min = -1;
    bool leaf_min_exact = true;
};

inline constexpr uint64_t kDefaultTreeBudget = 200'000;

/// Explores T(A) = {s : every prefix t has d_t A (|s|-|t|)-recurrent} to the
/// given depth. Membership is exact up to the bound; nodes cut by the bound
/// or the budget carry the frontier flag.
DerivationTree derivation_tree(RecurrenceEngine& eng, const ElementSet& a, int max_depth,
                               uint64_t node_budget = kDefaultTreeBudget);

/// FP of a path of the tree; verifies the path is present and that the
/// product set lands inside Delta(root). Throws invalid_branch_error /
/// theorem_violation_error accordingly.
ElementSet branch_fp(RecurrenceEngine& eng, const DerivationTree& tree,
                     const std::vector<int>& branch);

// ---------------------------------------------------------------------------
// Shifted product sets inside n-recurrent sets

struct FpShiftWitness {
    std::vector<int> directions;   // h_0 ... h_{n-1}
    ElementSet core;               // d_{h_{n-1}} ... d_{h_0} A
};

/// For n-recurrent A picks h_i in Delta^{n-i} of the running derivative,
/// so the core stays positive and every g in the core satisfies g in A and
/// g * h_alpha in A for all nonempty alpha. Deterministic: smallest viable
/// direction first.
FpShiftWitness fp_shift_witness(RecurrenceEngine& eng, const ElementSet& a, int n);

// ---------------------------------------------------------------------------
// Thickness predicates

/// Literal recursion: true when A is not n-recurrent; at n = 0 true when A
/// is small or A ∩ D is positive; otherwise positively many g satisfy both
/// (i) d_g A is (n-1)-recurrent and (ii) d_g D recurrently (n-1)-thick in d_g A.
bool is_recurrently_n_thick(RecurrenceEngine& eng, const ElementSet& d, const ElementSet& a,
                            int n);

struct ThickResult {
    bool value = false;
    bool exhaustive = false;   // quantified over a complete Large family
};

/// D n-thick in Delta(A): for every n-recurrent A ∩ H over Large H in the
/// family, positively many g in D satisfy the two-clause recursion. The
/// result is exact only when the family is complete; the flag says which
/// mode ran. family = nullptr asks the oracle for a complete family.
ThickResult n_thick_in_delta(RecurrenceEngine& eng, const ElementSet& d, const ElementSet& a,
                             int n, const std::vector<ElementSet>* family = nullptr);

// ---------------------------------------------------------------------------
// Respects-recurrence scan

struct RespectsViolation {
    ElementSet large_h;
    ElementSet set_a;
    int degree;
};

struct RespectsReport {
    bool exhaustive = false;
    int checked_pairs = 0;
    std::vector<RespectsViolation> violations;
    bool ok() const { return violations.empty(); }
};

/// Scans the characterization of respecting recurrence: for every Large H
/// and n-recurrent A there must be positively many g admitting an
/// (n-1)-recurrent A' ⊆ d_g A with A' \ Hg^{-1} small. Exhaustive over all
/// subsets for carriers <= 6; larger carriers sample seeded subsets.
RespectsReport respects_recurrence_check(RecurrenceEngine& eng, int max_n,
                                         int sample_count = 500, uint64_t seed = 0);

}  // namespace deltaset
