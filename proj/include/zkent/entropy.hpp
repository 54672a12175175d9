#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "zkent/family.hpp"
#include "zkent/spectrum.hpp"

namespace zkent {

// Entropy of the i.i.d. random action with an ergodic, absolutely continuous
// invariant measure. All values are in nats.
struct EntropyReport {
  double value = 0.0;
  std::vector<std::size_t> best_subset;  // blocks with a strictly positive term
  std::vector<double> block_terms;       // sum_i nu_i d_j lambda_{i,j}
  double mixture_bound = 0.0;            // sum_i nu_i h(f_i)
  std::optional<double> lipschitz_bound;
};

/// sum_i nu_i d_j lambda_{i,j} for block j.
double block_term(const Spectrum& spectrum, const Distribution& nu, std::size_t block);

/// Maximum over block subsets J of the summed block terms. The terms are
/// independent, so the maximizer is the set of strictly positive terms.
EntropyReport random_entropy(const Spectrum& spectrum, const Distribution& nu);

/// sum_i nu_i * generator_pesin_entropy(i). Never below random_entropy.
double generator_mixture_bound(const Spectrum& spectrum, const Distribution& nu);

/// True when no block has exponents of both signs across generators; then the
/// mixture bound is attained.
bool mixture_bound_is_tight(const Spectrum& spectrum);

enum class Sense { maximize, minimize };

struct ExtremalResult {
  Distribution nu;
  double value = 0.0;
};

/// Extremizes random_entropy over the probability simplex. The objective is
/// convex and piecewise linear: maxima sit at vertices, minima come from the
/// epigraph linear program.
ExtremalResult extremal_distribution(const Spectrum& spectrum, Sense sense);

}  // namespace zkent
