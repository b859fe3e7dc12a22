#pragma once

#include <random>

#include "deltaset/hilbert_vdc.hpp"
#include "deltaset/ramsey.hpp"

namespace deltaset {

/// Uniform double in [0,1) from raw engine bits; the engine sequence is
/// pinned by the standard, so draws reproduce across builds.
inline double uniform01(std::mt19937_64& rng) {
    return double(rng() >> 11) * (1.0 / 9007199254740992.0);
}

inline int uniform_below(std::mt19937_64& rng, int n) { return int(rng() % uint64_t(n)); }

/// Random subset of {0,..,n-1}, each element with probability 1/2.
ElementSet random_subset(int n, std::mt19937_64& rng);

/// Irreflexive relation built to satisfy the difference hypothesis under
/// frechet(n,1): every nonzero slice {g : R(g, gh)} loses at most one edge,
/// so H = G \ {identity} and H is Large. Instances vary in which edges are
/// cleared.
Relation random_hypothesis_relation(const Semigroup& group, std::mt19937_64& rng,
                                    double flip_prob = 0.5);

/// dim near-orthonormal unit vectors in R^dim (pairwise |<.,.>| <= delta),
/// assigned to the carrier cyclically: e_g = v_{g mod dim}.
VectorFamily perturbed_orthonormal_family(int carrier, int dim, double delta,
                                          std::mt19937_64& rng);

std::vector<double> random_vector(int dim, std::mt19937_64& rng, double scale = 1.0);

}  // namespace deltaset
