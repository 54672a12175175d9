#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zkent/family.hpp"
#include "zkent/spectrum.hpp"

namespace zkent {

// Phase-space hints a family file may carry.
struct TorusSpace {};
struct CircleExpandingSpace {
  std::vector<BigInt> degrees;
};
struct IntervalSpace {
  std::vector<long long> branches;
};
struct GraphSpace {};
using PhaseSpace = std::variant<TorusSpace, CircleExpandingSpace, IntervalSpace, GraphSpace>;

std::string_view phase_space_name(const PhaseSpace& space);

/// D(X) * sum_i nu_i log max(1, L_i)
double lipschitz_bound(std::span<const double> lipschitz, double ball_dim, const Distribution& nu);

/// d * sum_i nu_i log max(1, sup |Df_i|)
double smooth_bound(std::span<const double> opnorms, std::size_t manifold_dim, const Distribution& nu);

// expanding: every |deg| >= 2 is required. circle_monotone: |deg| >= 1 suffices.
enum class DegreeRule { expanding, circle_monotone };

/// sum_i nu_i log|deg f_i|
double expanding_entropy(std::span<const BigInt> degrees, const Distribution& nu,
                         DegreeRule rule = DegreeRule::expanding);

/// sum_i nu_i log N(f_i), N = number of monotone pieces.
double interval_bound(std::span<const long long> branches, const Distribution& nu);

/// Topological entropy of a random action by homeomorphisms of a finite graph.
inline constexpr double graph_homeomorphism_entropy() { return 0.0; }

struct FamilyConstants {
  std::vector<double> opnorms;  // largest singular value of each generator
  std::vector<BigInt> degrees;  // det A_i, signed
};

FamilyConstants family_constants(const GeneratorFamily& family);

struct TopoBoundsReport {
  double lower = 0.0;  // measure-theoretic entropy of Lebesgue measure
  std::optional<double> lipschitz_upper;
  std::optional<double> smooth_upper;
  std::optional<double> degree_value;
  std::optional<double> interval_upper;
  std::optional<double> graph_value;
  std::vector<std::pair<std::string, std::string>> rules;  // quantity -> rule that produced it
};

struct BoundsOptions {
  std::optional<double> ball_dim;  // defaults to the manifold dimension
  PhaseSpace phase_space = TorusSpace{};
};

/// Collects every bound that applies to the family, plus the lower bound.
TopoBoundsReport topo_bounds(const GeneratorFamily& family, const Spectrum& spectrum, const Distribution& nu,
                             const BoundsOptions& options = {});

}  // namespace zkent
