#pragma once

#include <optional>
#include <span>
#include <vector>

#include "deltaset/delta_measure.hpp"
#include "deltaset/recurrence.hpp"

namespace deltaset {

/// Deterministic pairwise summation; fixed reduction order keeps float sums
/// reproducible regardless of evaluation strategy.
double pairwise_sum(std::span<const double> xs);

double dot(std::span<const double> x, std::span<const double> y);
double norm_sq(std::span<const double> x);

/// Bounded vector family e_g indexed by carrier elements (real scalars).
struct VectorFamily {
    int dim = 0;
    std::vector<std::vector<double>> vectors;  // index = element
    double norm_bound = 1.0;

    /// Throws invalid_input_error when shapes disagree or a norm exceeds
    /// the declared bound (tolerance 1e-12).
    void validate() const;

    std::span<const double> at(int g) const { return vectors[size_t(g)]; }
};

struct VdcHypothesisResult {
    ElementSet good_h;   // {h : {g : |<e_g, e_{gh}>| <= eps} is Large}
    bool satisfied = false;
};

VdcHypothesisResult vdc_hypothesis(const Semigroup& s, const VectorFamily& fam,
                                   const FilterOracle& oracle, double eps);

struct VdcConclusionResult {
    ElementSet bad_set;   // {g : |<e_g, f>| >= eps}
    Verdict verdict = Verdict::Small;
    bool holds = false;   // bad set is not positive
};

VdcConclusionResult vdc_conclusion(const Semigroup& s, const VectorFamily& fam,
                                   std::span<const double> f, const FilterOracle& oracle,
                                   double eps);

// ---------------------------------------------------------------------------

/// One evaluated inequality line of the almost-orthogonal Bessel argument.
struct ChainLine {
    std::string label;
    double value = 0.0;
    bool ok = true;   // against the previous line, absolute tolerance
};

struct BesselChainReport {
    int n = 0;
    double eps = 0.0;        // min_i |<f, e_i>|
    double delta = 0.0;
    double norm_f_sq = 0.0;
    std::vector<ChainLine> lines;
    bool all_lines_ok = true;
    bool delta_premise_ok = false;    // (n-1) ||f||^2 delta <= eps^2 / 2
    bool contradiction = false;       // ||f||^2 < n eps^2 / 2
    double tolerance = 1e-9;
};

/// Walks the expansion of 0 <= ||f - sum <f,e_i> e_i||^2 through its upper
/// bounds down to ||f||^2 - n eps^2 + n(n-1)||f||^2 delta, reporting every
/// intermediate value. Preconditions: ||e_i|| <= 1 and pairwise
/// |<e_i,e_j>| <= delta; violations name the offending pair.
BesselChainReport bessel_error_chain(const std::vector<std::vector<double>>& vectors,
                                     std::span<const double> f, double delta,
                                     double tolerance = 1e-9);

// ---------------------------------------------------------------------------

/// Finite measure-preserving actions: a right action alpha (and optionally
/// a commuting left action beta) of the carrier on a finite probability
/// space. Permutation arrays per group element; nu is exact.
struct FiniteAction {
    int space = 0;
    std::vector<Rational> nu;                       // probability vector
    std::vector<std::vector<int>> right;            // right[g][x] = x . g
    std::optional<std::vector<std::vector<int>>> left;  // left[g][x] = g . x

    /// Rotation actions of Z_{group_size} on Z_space: x.g = x + rs*g,
    /// g.x = x + ls*g (mod space). The action law needs rs*group_size and
    /// ls*group_size divisible by space; validate() enforces it.
    static FiniteAction rotations(int space, int group_size, int right_stride,
                                  int left_stride);

    /// Checks action laws, nu-preservation and the pointwise commutation of
    /// the two actions against the given carrier. Throws on violation.
    void validate(const Semigroup& s) const;

    Rational measure(const ElementSet& xs) const;
};

struct MixingDefectResult {
    Rational max_defect;
    std::vector<std::pair<int, Rational>> per_g;
};

/// max over g in the window of |nu(A ∩ B.g^{-1}) - nu(A) nu(B)|, exact.
MixingDefectResult mixing_defect(const FiniteAction& act, const ElementSet& a,
                                 const ElementSet& b, const ElementSet& window);

struct TripleIdentityReport {
    std::vector<ChainLine> lines;   // five expressions, four equalities
    double residual = 0.0;
};

/// Numerically replays the product-regrouping identity chain that turns
/// <e_g, e_{gh}> into <F1, F2 translated by the combined action>, where
/// e_g = (g.f1)(f2.g), F1 = f1 (h.f1), F2 = f2 (f2.h). Left translates
/// compose contravariantly (f.h.g applies g innermost), which is what makes
/// the regrouping exact for any pair of commuting actions. Requires a group
/// carrier and a left action; non-commuting inputs raise precondition_error
/// with a witness point. Line flags use abs_tol plus rel_tol against the
/// larger magnitude; the residual reports the raw maximum gap.
TripleIdentityReport triple_identity_check(const Semigroup& s, const FiniteAction& act,
                                           std::span<const double> f1,
                                           std::span<const double> f2, int g, int h,
                                           double abs_tol = 1e-9, double rel_tol = 1e-6);

// ---------------------------------------------------------------------------

struct MeasurabilityGate {
    ElementSet level_set;     // {g : <e_g, f> >= eps}
    bool small = false;
    int recurrent_up_to = -1; // highest n <= max_n with the set n-recurrent
    bool passed = false;      // small or recurrent through max_n
};

/// Weak measurability screen: each level set must be Small or recurrent up
/// to the requested depth; failures are reported, never silently accepted.
MeasurabilityGate delta_measurability_gate(RecurrenceEngine& eng, const VectorFamily& fam,
                                           std::span<const double> f, double eps, int max_n);

}  // namespace deltaset
