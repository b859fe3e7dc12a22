#include "deltaset/generators.hpp"

#include <cmath>

namespace deltaset {

ElementSet random_subset(int n, std::mt19937_64& rng) {
    ElementSet s(n);
    uint64_t word = 0;
    int left = 0;
    for (int i = 0; i < n; ++i) {
        if (left == 0) {
            word = rng();
            left = 64;
        }
        if (word & 1) s.insert(i);
        word >>= 1;
        --left;
    }
    return s;
}

Relation random_hypothesis_relation(const Semigroup& group, std::mt19937_64& rng,
                                    double flip_prob) {
    if (!group.identity()) throw unsupported_error("relation generator needs an identity");
    int n = group.size();
    int e = *group.identity();
    Relation r = Relation::constant(n, true);
    for (int g = 0; g < n; ++g) r.set(g, g, false);
    for (int h = 0; h < n; ++h) {
        if (h == e) continue;
        if (uniform01(rng) < flip_prob) {
            int g = uniform_below(rng, n);
            r.set(g, group.product(g, h), false);
        }
    }
    return r;
}

VectorFamily perturbed_orthonormal_family(int carrier, int dim, double delta,
                                          std::mt19937_64& rng) {
    VectorFamily fam;
    fam.dim = dim;
    fam.norm_bound = 1.0;
    std::vector<std::vector<double>> basis(size_t(dim), std::vector<double>{});
    for (int i = 0; i < dim; ++i) {
        std::vector<double> v(size_t(dim), 0.0);
        v[size_t(i)] = 1.0;
        std::vector<double> w = random_vector(dim, rng, 1.0);
        double wn = std::sqrt(norm_sq(w));
        // Perturbation of norm delta/3 keeps pairwise inner products under
        // delta after normalization.
        double scale = wn > 0 ? (delta / 3.0) / wn : 0.0;
        for (int d = 0; d < dim; ++d) v[size_t(d)] += scale * w[size_t(d)];
        double vn = std::sqrt(norm_sq(v));
        for (auto& x : v) x /= vn;
        basis[size_t(i)] = std::move(v);
    }
    for (int g = 0; g < carrier; ++g) fam.vectors.push_back(basis[size_t(g % dim)]);
    fam.validate();
    return fam;
}

std::vector<double> random_vector(int dim, std::mt19937_64& rng, double scale) {
    std::vector<double> v(size_t(dim), 0.0);
    for (int d = 0; d < dim; ++d) v[size_t(d)] = (2.0 * uniform01(rng) - 1.0) * scale;
    return v;
}

}  // namespace deltaset
