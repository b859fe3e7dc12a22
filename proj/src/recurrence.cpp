#include "deltaset/recurrence.hpp"

#include <algorithm>
#include <random>

namespace deltaset {

ElementSet RecurrenceEngine::delta_set(const ElementSet& a, int n) {
    if (n < 0) throw invalid_input_error("delta_set: negative degree");
    if (n == 0) return a;
    Key key{a, n};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    ElementSet result(sg_->size());
    for (int g = 0; g < sg_->size(); ++g)
        if (is_recurrent(derivative(*sg_, a, g), n - 1)) result.insert(g);
    return memo_.emplace(std::move(key), std::move(result)).first->second;
}

bool RecurrenceEngine::is_recurrent(const ElementSet& a, int n) {
    return is_positive(oracle_.verdict(delta_set(a, n)));
}

RecurrenceProfile recurrence_profile(RecurrenceEngine& eng, const ElementSet& a, int max_n) {
    RecurrenceProfile p;
    p.set = a;
    for (int n = 0; n <= max_n; ++n) {
        p.delta_sets.push_back(eng.delta_set(a, n));
        p.verdicts.push_back(eng.verdict(p.delta_sets.back()));
        p.recurrent.push_back(is_positive(p.verdicts.back()));
    }
    return p;
}

// ---------------------------------------------------------------------------

DerivationTree derivation_tree(RecurrenceEngine& eng, const ElementSet& a, int max_depth,
                               uint64_t node_budget) {
    if (max_depth < 0) throw invalid_input_error("derivation_tree: negative depth");
    DerivationTree t;
    t.root = a;
    t.max_depth = max_depth;
    if (!is_positive(eng.verdict(a))) {
        // Empty tuple requires a positive A, so the tree is empty.
        return t;
    }
    t.nodes.push_back(TreeNode{{}, a, ElementSet(a.universe()), false, false, -1});
    const Semigroup& sg = eng.semigroup();
    for (size_t i = 0; i < t.nodes.size(); ++i) {
        int depth = int(t.nodes[i].path.size());
        if (depth >= max_depth) {
            t.nodes[i].frontier = true;
            continue;
        }
        if (t.budget_hit) {
            t.nodes[i].frontier = true;
            continue;
        }
        // Extending s to length m+1 raises the required recurrence degree of
        // every prefix by one; collect the prefix chain and check.
        std::vector<size_t> chain;  // root .. this node
        for (int j = int(i); j != -1; j = t.nodes[size_t(j)].parent)
            chain.push_back(size_t(j));
        std::reverse(chain.begin(), chain.end());
        bool extendable = true;
        for (size_t j = 0; j < chain.size(); ++j)
            if (!eng.is_recurrent(t.nodes[chain[j]].derived, depth + 1 - int(j))) {
                extendable = false;
                break;
            }
        if (!extendable) {
            t.nodes[i].leaf = true;
            continue;
        }
        ElementSet ext = eng.delta_set(t.nodes[i].derived, 1);
        if (t.nodes.size() + size_t(ext.count()) > node_budget) {
            t.budget_hit = true;
            t.nodes[i].frontier = true;
            continue;
        }
        t.nodes[i].ext = ext;
        ext.for_each([&](int x) {
            TreeNode child;
            child.path = t.nodes[i].path;
            child.path.push_back(x);
            child.derived = derivative(sg, t.nodes[i].derived, x);
            child.ext = ElementSet(a.universe());
            child.parent = int(i);
            t.nodes.push_back(std::move(child));
        });
    }
    t.depth_max = -1;
    bool any_frontier = false;
    int frontier_min = -1;
    t.leaf_min = -1;
    for (const auto& n : t.nodes) {
        int d = int(n.path.size());
        t.depth_max = std::max(t.depth_max, d);
        if (n.frontier) {
            any_frontier = true;
            frontier_min = frontier_min == -1 ? d : std::min(frontier_min, d);
        }
        if (n.leaf && (t.leaf_min == -1 || d < t.leaf_min)) t.leaf_min = d;
    }
    t.depth_max_exact = !any_frontier;
    t.leaf_min_exact =
        !any_frontier || (t.leaf_min != -1 && frontier_min >= t.leaf_min);
    return t;
}

ElementSet branch_fp(RecurrenceEngine& eng, const DerivationTree& tree,
                     const std::vector<int>& branch) {
    // Walk the stored tree to confirm the branch is one of its paths.
    if (tree.nodes.empty()) throw invalid_branch_error("branch_fp: tree is empty");
    size_t node = 0;
    for (int step : branch) {
        bool found = false;
        for (size_t j = node + 1; j < tree.nodes.size(); ++j) {
            if (tree.nodes[j].parent == int(node) && tree.nodes[j].path.back() == step) {
                node = j;
                found = true;
                break;
            }
        }
        if (!found) throw invalid_branch_error("branch_fp: branch not present in tree");
    }
    ElementSet fp = finite_products(eng.semigroup(), branch, false);
    ElementSet delta = eng.delta_set(tree.root, 1);
    if (!delta.contains(fp))
        throw theorem_violation_error("branch_fp: FP escapes Delta(A)");
    return fp;
}

// ---------------------------------------------------------------------------

FpShiftWitness fp_shift_witness(RecurrenceEngine& eng, const ElementSet& a, int n) {
    if (n < 0) throw invalid_input_error("fp_shift_witness: negative degree");
    if (!eng.is_recurrent(a, n))
        throw precondition_error("fp_shift_witness: set is not n-recurrent");
    FpShiftWitness w;
    ElementSet current = a;
    const Semigroup& sg = eng.semigroup();
    for (int i = 0; i < n; ++i) {
        ElementSet cand = eng.delta_set(current, n - i);
        int h = cand.first();
        if (h < 0) throw theorem_violation_error("fp_shift_witness: positive set is empty");
        w.directions.push_back(h);
        current = derivative(sg, current, h);
    }
    w.core = current;
    return w;
}

// ---------------------------------------------------------------------------

bool is_recurrently_n_thick(RecurrenceEngine& eng, const ElementSet& d, const ElementSet& a,
                            int n) {
    if (n < 0) throw invalid_input_error("is_recurrently_n_thick: negative degree");
    if (n == 0) {
        if (!is_positive(eng.verdict(a))) return true;
        return is_positive(eng.verdict(a & d));
    }
    if (!eng.is_recurrent(a, n)) return true;
    const Semigroup& sg = eng.semigroup();
    ElementSet good(sg.size());
    for (int g = 0; g < sg.size(); ++g) {
        ElementSet da = derivative(sg, a, g);
        if (!eng.is_recurrent(da, n - 1)) continue;
        if (!is_recurrently_n_thick(eng, derivative(sg, d, g), da, n - 1)) continue;
        good.insert(g);
    }
    return is_positive(eng.verdict(good));
}

namespace {

struct ThickEvaluator {
    using Key = std::tuple<std::vector<uint64_t>, std::vector<uint64_t>, int>;
    RecurrenceEngine& eng;
    const std::vector<ElementSet>& family;
    std::map<Key, bool> memo;

    bool eval(const ElementSet& d, const ElementSet& a, int n) {
        if (n == 0) return true;
        Key key{d.blocks(), a.blocks(), n};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        const Semigroup& sg = eng.semigroup();
        bool value = true;
        for (const ElementSet& h : family) {
            ElementSet tilde = a & h;
            if (!eng.is_recurrent(tilde, n)) continue;
            ElementSet good(sg.size());
            d.for_each([&](int g) {
                ElementSet da = derivative(sg, tilde, g);
                if (!eng.is_recurrent(da, n - 1)) return;
                if (!eval(derivative(sg, d, g), da, n - 1)) return;
                good.insert(g);
            });
            if (!is_positive(eng.verdict(good))) {
                value = false;
                break;
            }
        }
        memo.emplace(key, value);
        return value;
    }
};

}  // namespace

ThickResult n_thick_in_delta(RecurrenceEngine& eng, const ElementSet& d, const ElementSet& a,
                             int n, const std::vector<ElementSet>* family) {
    if (n < 0) throw invalid_input_error("n_thick_in_delta: negative degree");
    if (n == 0) return {true, true};
    std::vector<ElementSet> own;
    bool exhaustive;
    if (family == nullptr) {
        auto fam = eng.oracle().large_family();
        if (!fam)
            throw precondition_error(
                "n_thick_in_delta: no complete Large family; pass one explicitly");
        own = std::move(*fam);
        exhaustive = true;
    } else {
        own = *family;
        exhaustive = false;
    }
    ThickEvaluator ev{eng, own, {}};
    return {ev.eval(d, a, n), exhaustive};
}

// ---------------------------------------------------------------------------

RespectsReport respects_recurrence_check(RecurrenceEngine& eng, int max_n, int sample_count,
                                         uint64_t seed) {
    const Semigroup& sg = eng.semigroup();
    int n_carrier = sg.size();
    RespectsReport report;

    auto fam = eng.oracle().large_family();
    if (!fam)
        throw precondition_error("respects_recurrence_check: Large family not enumerable");

    std::vector<ElementSet> subjects;
    if (n_carrier <= 6) {
        report.exhaustive = true;
        for (uint64_t mask = 0; mask < (uint64_t{1} << n_carrier); ++mask) {
            ElementSet a(n_carrier);
            for (int i = 0; i < n_carrier; ++i)
                if (mask >> i & 1) a.insert(i);
            subjects.push_back(std::move(a));
        }
    } else {
        report.exhaustive = false;
        std::mt19937_64 rng(seed);
        for (int i = 0; i < sample_count; ++i) {
            ElementSet a(n_carrier);
            uint64_t word = 0;
            int bits_left = 0;
            for (int j = 0; j < n_carrier; ++j) {
                if (bits_left == 0) {
                    word = rng();
                    bits_left = 64;
                }
                if (word & 1) a.insert(j);
                word >>= 1;
                --bits_left;
            }
            subjects.push_back(std::move(a));
        }
    }

    // Masks of the leak set ordered large-first; recurrence is monotone in
    // the candidate set, so bigger small leaks dominate smaller ones.
    auto scan_leak = [&](const ElementSet& base, const ElementSet& leak, int degree) {
        std::vector<int> leak_idx = leak.to_indices();
        int m = int(leak_idx.size());
        std::vector<unsigned> masks(size_t(1) << m);
        for (unsigned q = 0; q < masks.size(); ++q) masks[q] = q;
        std::sort(masks.begin(), masks.end(), [](unsigned x, unsigned y) {
            int px = __builtin_popcount(x), py = __builtin_popcount(y);
            return px != py ? px > py : x < y;
        });
        for (unsigned q : masks) {
            ElementSet s(base.universe());
            for (int b = 0; b < m; ++b)
                if (q >> b & 1) s.insert(leak_idx[size_t(b)]);
            if (!is_small(eng.verdict(s))) continue;
            if (eng.is_recurrent(base | s, degree)) return true;
        }
        return false;
    };

    for (const ElementSet& a : subjects) {
        for (int n = 1; n <= max_n; ++n) {
            if (!eng.is_recurrent(a, n)) continue;
            for (const ElementSet& h : *fam) {
                ++report.checked_pairs;
                ElementSet witness_pool(n_carrier);
                for (int g = 0; g < n_carrier; ++g) {
                    ElementSet da = derivative(sg, a, g);
                    ElementSet hg = translate_preimage(sg, h, g);
                    if (scan_leak(da & hg, da - hg, n - 1)) witness_pool.insert(g);
                }
                if (!is_positive(eng.verdict(witness_pool)))
                    report.violations.push_back({h, a, n});
            }
        }
    }
    return report;
}

}  // namespace deltaset
