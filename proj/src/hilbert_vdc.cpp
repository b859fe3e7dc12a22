#include "deltaset/hilbert_vdc.hpp"

#include <cmath>

namespace deltaset {

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double dot(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw invalid_input_error("dot: dimension mismatch");
    std::vector<double> prod(x.size());
    for (size_t i = 0; i < x.size(); ++i) prod[i] = x[i] * y[i];
    return pairwise_sum(prod);
}

double norm_sq(std::span<const double> x) { return dot(x, x); }

void VectorFamily::validate() const {
    for (const auto& v : vectors)
        if (int(v.size()) != dim)
            throw invalid_input_error("VectorFamily: row with wrong dimension");
    for (size_t g = 0; g < vectors.size(); ++g)
        if (std::sqrt(norm_sq(vectors[g])) > norm_bound + 1e-12)
            throw invalid_input_error("VectorFamily: ||e_" + std::to_string(g) +
                                      "|| exceeds the declared bound");
}

VdcHypothesisResult vdc_hypothesis(const Semigroup& s, const VectorFamily& fam,
                                   const FilterOracle& oracle, double eps) {
    if (eps <= 0) throw invalid_input_error("vdc_hypothesis: eps must be positive");
    if (int(fam.vectors.size()) != s.size())
        throw invalid_input_error("vdc_hypothesis: family does not cover the carrier");
    VdcHypothesisResult res;
    res.good_h = ElementSet(s.size());
    for (int h = 0; h < s.size(); ++h) {
        ElementSet inner(s.size());
        for (int g = 0; g < s.size(); ++g) {
            auto p = s.try_product(g, h);
            if (p && std::abs(dot(fam.at(g), fam.at(*p))) <= eps) inner.insert(g);
        }
        if (oracle.large(inner)) res.good_h.insert(h);
    }
    res.satisfied = oracle.large(res.good_h);
    return res;
}

VdcConclusionResult vdc_conclusion(const Semigroup& s, const VectorFamily& fam,
                                   std::span<const double> f, const FilterOracle& oracle,
                                   double eps) {
    if (eps <= 0) throw invalid_input_error("vdc_conclusion: eps must be positive");
    VdcConclusionResult res;
    res.bad_set = ElementSet(s.size());
    for (int g = 0; g < s.size(); ++g)
        if (std::abs(dot(fam.at(g), f)) >= eps) res.bad_set.insert(g);
    res.verdict = oracle.verdict(res.bad_set);
    res.holds = !is_positive(res.verdict);
    return res;
}

// ---------------------------------------------------------------------------

BesselChainReport bessel_error_chain(const std::vector<std::vector<double>>& vectors,
                                     std::span<const double> f, double delta,
                                     double tolerance) {
    int n = int(vectors.size());
    if (n == 0) throw invalid_input_error("bessel_error_chain: no vectors");
    size_t dim = f.size();
    for (const auto& v : vectors)
        if (v.size() != dim) throw invalid_input_error("bessel_error_chain: dim mismatch");
    for (int i = 0; i < n; ++i)
        if (std::sqrt(norm_sq(vectors[size_t(i)])) > 1.0 + 1e-12)
            throw precondition_error("bessel_error_chain: ||e_" + std::to_string(i) +
                                     "|| > 1");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(dot(vectors[size_t(i)], vectors[size_t(j)])) > delta + 1e-12)
                throw precondition_error("bessel_error_chain: pair (" + std::to_string(i) +
                                         "," + std::to_string(j) + ") exceeds delta");

    BesselChainReport rep;
    rep.n = n;
    rep.delta = delta;
    rep.tolerance = tolerance;
    rep.norm_f_sq = norm_sq(f);

    std::vector<double> coef(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) coef[size_t(i)] = dot(f, vectors[size_t(i)]);
    double eps = std::abs(coef[0]);
    for (double c : coef) eps = std::min(eps, std::abs(c));
    rep.eps = eps;

    // L0: the residual norm itself.
    std::vector<double> resid(f.begin(), f.end());
    for (int i = 0; i < n; ++i)
        for (size_t d = 0; d < dim; ++d) resid[d] -= coef[size_t(i)] * vectors[size_t(i)][d];
    double l0 = norm_sq(resid);

    // L1: expanded form ||f||^2 - 2 sum c_i^2 + sum_{i,j} c_i c_j <e_i,e_j>.
    std::vector<double> terms;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            terms.push_back(coef[size_t(i)] * coef[size_t(j)] *
                            dot(vectors[size_t(i)], vectors[size_t(j)]));
    std::vector<double> sq(size_t(n), 0.0);
    for (int i = 0; i < n; ++i) sq[size_t(i)] = coef[size_t(i)] * coef[size_t(i)];
    double sum_sq = pairwise_sum(sq);
    double l1 = rep.norm_f_sq - 2 * sum_sq + pairwise_sum(terms);

    // L2: diagonal kept, off-diagonal bounded by Cauchy-Schwarz.
    double norm_f = std::sqrt(rep.norm_f_sq);
    std::vector<double> diag(size_t(n), 0.0), off;
    for (int i = 0; i < n; ++i)
        diag[size_t(i)] = sq[size_t(i)] * norm_sq(vectors[size_t(i)]);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            off.push_back(norm_f * std::sqrt(norm_sq(vectors[size_t(i)])) * norm_f *
                          std::sqrt(norm_sq(vectors[size_t(j)])) *
                          std::abs(dot(vectors[size_t(i)], vectors[size_t(j)])));
        }
    double l2 = rep.norm_f_sq - 2 * sum_sq + pairwise_sum(diag) + pairwise_sum(off);

    // L3: unit norms and the delta bound.
    double l3 = rep.norm_f_sq - sum_sq + double(n) * double(n - 1) * rep.norm_f_sq * delta;

    // L4: coefficients bounded below by eps.
    double l4 = rep.norm_f_sq - double(n) * eps * eps +
                double(n) * double(n - 1) * rep.norm_f_sq * delta;

    rep.lines.push_back({"residual_norm_sq", l0, l0 >= -tolerance});
    rep.lines.push_back({"expanded", l1, std::abs(l1 - l0) <= tolerance});
    rep.lines.push_back({"cauchy_schwarz_bound", l2, l1 <= l2 + tolerance});
    rep.lines.push_back({"delta_bound", l3, l2 <= l3 + tolerance});
    rep.lines.push_back({"eps_bound", l4, l3 <= l4 + tolerance});

    rep.delta_premise_ok = double(n - 1) * rep.norm_f_sq * delta <= eps * eps / 2;
    if (rep.delta_premise_ok) {
        double l5 = rep.norm_f_sq - double(n) * eps * eps / 2;
        rep.lines.push_back({"half_eps_bound", l5, l4 <= l5 + tolerance});
    }
    rep.contradiction = rep.norm_f_sq < double(n) * eps * eps / 2;
    for (const auto& line : rep.lines) rep.all_lines_ok = rep.all_lines_ok && line.ok;
    return rep;
}

// ---------------------------------------------------------------------------

FiniteAction FiniteAction::rotations(int space, int group_size, int right_stride,
                                     int left_stride) {
    FiniteAction act;
    act.space = space;
    act.nu.assign(size_t(space), Rational(1, space));
    act.right.resize(size_t(group_size));
    act.left.emplace(size_t(group_size));
    for (int g = 0; g < group_size; ++g) {
        act.right[size_t(g)].resize(size_t(space));
        (*act.left)[size_t(g)].resize(size_t(space));
        for (int x = 0; x < space; ++x) {
            act.right[size_t(g)][size_t(x)] = int((x + int64_t(right_stride) * g) % space);
            (*act.left)[size_t(g)][size_t(x)] = int((x + int64_t(left_stride) * g) % space);
        }
    }
    return act;
}

void FiniteAction::validate(const Semigroup& s) const {
    if (int(right.size()) != s.size())
        throw invalid_input_error("FiniteAction: right action must cover the carrier");
    if (int(nu.size()) != space) throw invalid_input_error("FiniteAction: nu size mismatch");
    Rational total(0);
    for (const auto& p : nu) total = total + p;
    if (total != Rational(1)) throw invalid_input_error("FiniteAction: nu must sum to 1");

    auto check_perm = [&](const std::vector<int>& perm, const std::string& what) {
        if (int(perm.size()) != space)
            throw invalid_input_error("FiniteAction: " + what + " has wrong length");
        std::vector<char> seen(size_t(space), 0);
        for (int x = 0; x < space; ++x) {
            int y = perm[size_t(x)];
            if (y < 0 || y >= space || seen[size_t(y)])
                throw invalid_input_error("FiniteAction: " + what + " is not a bijection");
            seen[size_t(y)] = 1;
            if (nu[size_t(y)] != nu[size_t(x)])
                throw invalid_input_error("FiniteAction: " + what + " does not preserve nu");
        }
    };
    for (int g = 0; g < s.size(); ++g) check_perm(right[size_t(g)], "right[" + std::to_string(g) + "]");
    if (left)
        for (int g = 0; g < s.size(); ++g) check_perm((*left)[size_t(g)], "left[" + std::to_string(g) + "]");

    // Action laws against the carrier product.
    for (int g = 0; g < s.size(); ++g)
        for (int h = 0; h < s.size(); ++h) {
            auto p = s.try_product(g, h);
            if (!p) continue;
            for (int x = 0; x < space; ++x) {
                if (right[size_t(*p)][size_t(x)] !=
                    right[size_t(h)][size_t(right[size_t(g)][size_t(x)])])
                    throw invalid_input_error("FiniteAction: right action law fails");
                if (left && (*left)[size_t(*p)][size_t(x)] !=
                                (*left)[size_t(g)][size_t((*left)[size_t(h)][size_t(x)])])
                    throw invalid_input_error("FiniteAction: left action law fails");
            }
        }

    if (left) {
        for (int g = 0; g < s.size(); ++g)
            for (int h = 0; h < s.size(); ++h)
                for (int x = 0; x < space; ++x) {
                    int lhs = (*left)[size_t(g)][size_t(right[size_t(h)][size_t(x)])];
                    int rhs = right[size_t(h)][size_t((*left)[size_t(g)][size_t(x)])];
                    if (lhs != rhs)
                        throw precondition_error(
                            "FiniteAction: actions do not commute at (g=" +
                            std::to_string(g) + ", h=" + std::to_string(h) +
                            ", x=" + std::to_string(x) + ")");
                }
    }
}

Rational FiniteAction::measure(const ElementSet& xs) const {
    Rational total(0);
    xs.for_each([&](int x) { total = total + nu[size_t(x)]; });
    return total;
}

MixingDefectResult mixing_defect(const FiniteAction& act, const ElementSet& a,
                                 const ElementSet& b, const ElementSet& window) {
    if (a.universe() != act.space || b.universe() != act.space)
        throw invalid_input_error("mixing_defect: sets must live on the action space");
    MixingDefectResult res;
    res.max_defect = Rational(0);
    Rational target = act.measure(a) * act.measure(b);
    window.for_each([&](int g) {
        ElementSet preimage(act.space);
        for (int x = 0; x < act.space; ++x)
            if (b.test(act.right[size_t(g)][size_t(x)])) preimage.insert(x);
        Rational d = act.measure(a & preimage) - target;
        if (d < Rational(0)) d = Rational(0) - d;
        res.per_g.emplace_back(g, d);
        if (d > res.max_defect) res.max_defect = d;
    });
    return res;
}

TripleIdentityReport triple_identity_check(const Semigroup& s, const FiniteAction& act,
                                           std::span<const double> f1,
                                           std::span<const double> f2, int g, int h,
                                           double abs_tol, double rel_tol) {
    if (!s.is_group())
        throw precondition_error("triple_identity_check: carrier must be a group");
    if (!act.left)
        throw precondition_error("triple_identity_check: left action required");
    act.validate(s);
    if (int(f1.size()) != act.space || int(f2.size()) != act.space)
        throw invalid_input_error("triple_identity_check: function size mismatch");

    const auto& R = act.right;
    const auto& L = *act.left;
    int X = act.space;
    int gh = s.product(g, h);
    int hg = s.product(h, g);
    int ginv = s.inverse(g);

    std::vector<double> w(size_t(X), 0.0);
    for (int x = 0; x < X; ++x) w[size_t(x)] = act.nu[size_t(x)].to_double();

    auto integrate = [&](auto&& fn) {
        std::vector<double> terms(size_t(X), 0.0);
        for (int x = 0; x < X; ++x) terms[size_t(x)] = w[size_t(x)] * fn(x);
        return pairwise_sum(terms);
    };

    // e_g(x) = f1(x.g) f2(g.x); the partner uses index gh on the right and
    // hg on the left, which is the contravariant composition of the two
    // translates in the displayed product.
    auto e1 = [&](int x) { return f1[size_t(R[size_t(g)][size_t(x)])] *
                                  f2[size_t(L[size_t(g)][size_t(x)])]; };
    auto e2 = [&](int x) { return f1[size_t(R[size_t(gh)][size_t(x)])] *
                                  f2[size_t(L[size_t(hg)][size_t(x)])]; };

    std::vector<double> F1(size_t(X), 0.0), F2(size_t(X), 0.0);
    for (int x = 0; x < X; ++x) {
        F1[size_t(x)] = f1[size_t(x)] * f1[size_t(R[size_t(h)][size_t(x)])];
        F2[size_t(x)] = f2[size_t(x)] * f2[size_t(L[size_t(h)][size_t(x)])];
    }

    double q1 = integrate([&](int x) { return e1(x) * e2(x); });
    // Regrouped integrand: (g . F1)(x) * (F2 . g)(x).
    double q2 = integrate([&](int x) {
        return F1[size_t(R[size_t(g)][size_t(x)])] * F2[size_t(L[size_t(g)][size_t(x)])];
    });
    // Same quantity assembled as an inner product of translated functions.
    std::vector<double> gF1(size_t(X), 0.0), F2g(size_t(X), 0.0);
    for (int x = 0; x < X; ++x) {
        gF1[size_t(x)] = F1[size_t(R[size_t(g)][size_t(x)])];
        F2g[size_t(x)] = F2[size_t(L[size_t(g)][size_t(x)])];
    }
    std::vector<double> terms3(size_t(X), 0.0);
    for (int x = 0; x < X; ++x) terms3[size_t(x)] = w[size_t(x)] * gF1[size_t(x)] * F2g[size_t(x)];
    double q3 = pairwise_sum(terms3);
    // Unitarity: move the alpha translate across the inner product.
    double q4 = integrate([&](int x) {
        return F1[size_t(x)] * F2g[size_t(R[size_t(ginv)][size_t(x)])];
    });
    // Combined action: x .gamma g^{-1} = (g .beta x) .alpha g^{-1}; the swap
    // of application order relative to the previous line is exactly the
    // commutation of the two actions.
    double q5 = integrate([&](int x) {
        return F1[size_t(x)] *
               F2[size_t(R[size_t(ginv)][size_t(L[size_t(g)][size_t(x)])])];
    });

    TripleIdentityReport rep;
    rep.lines.push_back({"inner_product", q1, true});
    rep.lines.push_back({"regrouped_product", q2, true});
    rep.lines.push_back({"translated_inner_product", q3, true});
    rep.lines.push_back({"unitarity_step", q4, true});
    rep.lines.push_back({"combined_action", q5, true});
    double vals[5] = {q1, q2, q3, q4, q5};
    for (int i = 1; i < 5; ++i) {
        double gap = std::abs(vals[i] - vals[i - 1]);
        double scale = std::max(std::abs(vals[i]), std::abs(vals[i - 1]));
        rep.residual = std::max(rep.residual, gap);
        rep.lines[size_t(i)].ok = gap <= std::max(abs_tol, rel_tol * scale);
    }
    return rep;
}

// ---------------------------------------------------------------------------

MeasurabilityGate delta_measurability_gate(RecurrenceEngine& eng, const VectorFamily& fam,
                                           std::span<const double> f, double eps, int max_n) {
    const Semigroup& s = eng.semigroup();
    MeasurabilityGate gate;
    gate.level_set = ElementSet(s.size());
    for (int g = 0; g < s.size(); ++g)
        if (dot(fam.at(g), f) >= eps) gate.level_set.insert(g);
    gate.small = is_small(eng.verdict(gate.level_set));
    if (!gate.small) {
        gate.recurrent_up_to = -1;
        for (int n = 0; n <= max_n; ++n) {
            if (!eng.is_recurrent(gate.level_set, n)) break;
            gate.recurrent_up_to = n;
        }
    }
    gate.passed = gate.small || gate.recurrent_up_to >= max_n;
    return gate;
}

}  // namespace deltaset
