#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "deltaset/recurrence.hpp"

namespace deltaset {

/// Binary relation on the carrier as a dense boolean matrix. Not required
/// to be symmetric or reflexive.
class Relation {
public:
    Relation() = default;
    explicit Relation(int n) : n_(n), m_(size_t(n) * n, 0) {}

    static Relation constant(int n, bool value) {
        Relation r(n);
        if (value) std::fill(r.m_.begin(), r.m_.end(), 1);
        return r;
    }

    static Relation from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
        Relation r(n);
        for (auto [a, b] : edges) r.set(a, b, true);
        return r;
    }

    int size() const { return n_; }

    bool operator()(int a, int b) const { return m_[size_t(a) * n_ + b] != 0; }

    void set(int a, int b, bool v) {
        if (a < 0 || a >= n_ || b < 0 || b >= n_)
            throw invalid_input_error("Relation: index out of range");
        m_[size_t(a) * n_ + b] = v ? 1 : 0;
    }

private:
    int n_ = 0;
    std::vector<uint8_t> m_;
};

/// {g : R(g, g*v)}. Elements whose product is undefined are excluded.
ElementSet relation_difference_set(const Semigroup& s, const Relation& r, int v);

/// {g : R(g*u, g*u*w)} for the translated slices R(.h_a, .h_a h_b).
ElementSet relation_translated_set(const Semigroup& s, const Relation& r, int u, int w);

struct HypothesisResult {
    ElementSet h_set;
    bool large = false;
};

/// H = {h : {g : R(g, gh)} is Large}; the theorem hypothesis asks H Large.
HypothesisResult hypothesis_check(const Semigroup& s, const Relation& r,
                                  const FilterOracle& oracle);

struct ThicknessDiagnostic {
    int m = 0;
    bool evaluated = false;
    bool holds = false;
    bool exhaustive = false;
};

struct RamseyTranscript {
    int n = 0;                        // difference steps; witness has n+1 entries
    std::vector<int> h;               // h_0 .. h_{n-1}
    std::vector<ElementSet> a_seq;    // A_0 .. A_n
    std::vector<ElementSet> h_seq;    // H_0 .. H_n
    int base_g = -1;                  // g in A_n
    std::vector<int> witness;         // g_0 .. g_n with R(g_j, g_i) for i<j
    std::vector<ThicknessDiagnostic> thickness;  // monitored, never a gate
};

struct no_witness_error : error {
    no_witness_error(std::string msg, RamseyTranscript t)
        : error(std::move(msg)), deepest(std::move(t)) {}
    RamseyTranscript deepest;
};

struct RamseyOptions {
    bool thickness_diagnostics = false;
    // Stop evaluating the (m.4) diagnostic on carriers where the Large
    // family is not cheaply enumerable.
    int thickness_carrier_limit = 16;
};

/// Constructive extraction along the recurrence machinery: h_m ranges over
/// H_m = d_{h_{m-1}} ... d_{h_0} H in ascending order with full
/// backtracking; the gate keeps A_{m+1} = d_{h_m} A_m ∩ (all translated
/// slices) (n-m-1)-recurrent. The witness is g_i = g * h_{n-1} * ... * h_i
/// for g the least element of A_n; note it has n+1 entries g_0..g_n built
/// from n difference steps. Throws hypothesis_violated_error,
/// precondition_error (A not n-recurrent), or no_witness_error carrying the
/// deepest transcript reached.
RamseyTranscript delta_ramsey_witness(RecurrenceEngine& eng, const Relation& r,
                                      const ElementSet& a, int n,
                                      const RamseyOptions& opts = {});

struct TranscriptReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Independent re-check of a transcript: set inclusions and recurrence
/// degrees per step, slice conditions for all admissible index pairs,
/// witness membership, and the clique condition — all recomputed from
/// first principles, sharing no state with the extractor.
TranscriptReport verify_transcript(const Semigroup& s, const Relation& r, const ElementSet& a,
                                   const RamseyTranscript& t, const FilterOracle& oracle);

inline constexpr uint64_t kDefaultCliqueBudget = 50'000'000;

/// Lexicographically first ordered tuple (g_0..g_n) in A with R(g_j, g_i)
/// for all i < j, or nullopt after exhaustive search. Elements may repeat
/// only where R(g, g) holds. Budget overrun raises indeterminate_error.
std::optional<std::vector<int>> brute_force_clique(const Relation& r, const ElementSet& a,
                                                   int n,
                                                   uint64_t budget = kDefaultCliqueBudget);

}  // namespace deltaset
