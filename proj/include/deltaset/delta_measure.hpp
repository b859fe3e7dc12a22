#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "deltaset/rational.hpp"
#include "deltaset/recurrence.hpp"

namespace deltaset {

/// Finitely subadditive probability measure on an algebra of subsets.
/// Values are exact rationals; every instantiation here is total on the
/// power set, but the domain hook stays for audits.
class SubadditiveMeasure {
public:
    using ValueFn = std::function<Rational(const ElementSet&)>;
    using DomainFn = std::function<bool(const ElementSet&)>;

    SubadditiveMeasure() = default;
    SubadditiveMeasure(nlohmann::json descriptor, int carrier, ValueFn value,
                       DomainFn domain = nullptr)
        : desc_(std::move(descriptor)), carrier_(carrier), value_(std::move(value)),
          domain_(std::move(domain)) {}

    Rational value(const ElementSet& a) const {
        if (domain_ && !domain_(a))
            throw invalid_input_error("measure: set outside the algebra");
        return value_(a);
    }
    bool in_domain(const ElementSet& a) const { return !domain_ || domain_(a); }
    const nlohmann::json& descriptor() const { return desc_; }
    int carrier() const { return carrier_; }

private:
    nlohmann::json desc_;
    int carrier_ = 0;
    ValueFn value_;
    DomainFn domain_;
};

/// Normalized counting measure |A|/|G| on a finite group.
SubadditiveMeasure counting_measure(const Semigroup& s);

/// max_k |A ∩ F_k| / |F_k| over the supplied windows; the desk-scale limsup.
SubadditiveMeasure upper_density_measure(const Semigroup& s,
                                         const std::vector<ElementSet>& windows);

struct DensityResult {
    Rational value;
    int windows_used = 0;
    std::vector<Rational> per_window;
};

DensityResult upper_density(const ElementSet& a, const std::vector<ElementSet>& windows);

/// Conull filter F_mu: Large iff the complement has measure zero.
FilterOracle measure_conull_oracle(const SubadditiveMeasure& mu);

// ---------------------------------------------------------------------------

struct MeasureAuditReport {
    bool endpoints_ok = true;          // mu(empty)=0, mu(S)=1
    bool monotone_ok = true;
    bool subadditive_ok = true;
    bool almost_invariant_ok = true;   // conull-many g preserve every value
    bool translate_additive_ok = true;
    bool exhaustive = false;
    int pairs_checked = 0;
    std::vector<std::string> violations;

    bool delta_measure() const {
        return endpoints_ok && monotone_ok && subadditive_ok && almost_invariant_ok &&
               translate_additive_ok;
    }
};

/// Verifies measure axioms and the two translate axioms. Exhaustive over all
/// sets for carriers <= 8, seeded sampling beyond.
MeasureAuditReport delta_measure_audit(const Semigroup& s, const SubadditiveMeasure& mu,
                                       int sample_budget = 400, uint64_t seed = 0);

// ---------------------------------------------------------------------------

struct QuantitativeRecurrence {
    ElementSet good_h;       // {h : mu(d_h A) >= mu(A)^2/3}
    Rational bound;          // mu(A)^2 / 3
    Rational mu_a;
    long long ramsey_n;      // ceil(3 / mu(A)), the clique size the proof uses
    std::vector<Rational> per_h;
};

/// Exact scan of the quantitative recurrence bound. The good set must be
/// F_mu-positive on any audited measure; an empty result signals a broken
/// input and raises theorem_violation_error.
QuantitativeRecurrence quantitative_recurrence(const Semigroup& s,
                                               const SubadditiveMeasure& mu,
                                               const ElementSet& a);

struct UnionBoundReport {
    Rational lhs;            // mu(union of translates)
    Rational sum_singles;
    Rational sum_pairs;
    Rational rhs;            // sum_singles - sum_pairs
    Rational slack;          // lhs - rhs
    bool holds = false;
};

/// Inclusion-exclusion lower bound on a union of right translates,
/// evaluated exactly.
UnionBoundReport union_bound_check(const Semigroup& s, const SubadditiveMeasure& mu,
                                   const ElementSet& a, const std::vector<int>& gs);

struct FpShiftCertificate {
    std::vector<int> directions;      // h_0 .. h_{m-1}, m <= requested N
    int achieved = 0;                 // certified prefix length
    bool complete = false;            // achieved == requested
    ElementSet final_core;
    int shift_g = -1;                 // g with g*FP(prefix) inside A
};

/// Density-Hindman style certificate: descend through positive derivatives
/// so that every prefix keeps the intersection of translates positive, then
/// exhibit a shift witness. A finite carrier may bound the achievable
/// length; the certificate reports what was certified.
FpShiftCertificate fp_shift_corollary_check(const Semigroup& s, const SubadditiveMeasure& mu,
                                            const ElementSet& a, int length);

}  // namespace deltaset
