#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zkent/family.hpp"
#include "zkent/spectrum.hpp"

namespace zkent {

/// Set of block indices (0-based), stored as a bitmask. At most 30 blocks.
class BlockSet {
 public:
  static constexpr std::size_t kMaxBlocks = 30;

  BlockSet() = default;
  explicit BlockSet(std::uint32_t mask) : mask_(mask) {}
  /// Throws BadSubset for an index >= block_count or a repeated index.
  static BlockSet from_indices(const std::vector<std::size_t>& indices, std::size_t block_count);

  std::uint32_t mask() const noexcept { return mask_; }
  bool contains(std::size_t j) const noexcept { return (mask_ >> j) & 1u; }
  std::vector<std::size_t> indices() const;
  bool operator==(const BlockSet&) const = default;

 private:
  std::uint32_t mask_ = 0;
};

enum class CoincidenceStatus { measure_zero_certified, identical_generators, inconclusive };

std::string_view to_string(CoincidenceStatus status);

struct CoincidenceCertificate {
  std::size_t first = 0;
  std::size_t second = 0;
  BigInt det_difference;  // det(A_first - A_second)
  CoincidenceStatus status = CoincidenceStatus::inconclusive;
};

struct FriedlandReport {
  double value = 0.0;
  BlockSet best_subset;
  std::vector<BlockSet> tied_subsets;  // every maximizer, in enumeration order
  std::vector<double> pressures;       // indexed by BlockSet mask
  Distribution maximizing_nu = Distribution::uniform(1);
  double consistency_residual = 0.0;   // |H(nu*) + h(nu*) - value|
  std::vector<CoincidenceCertificate> coincidence;
  bool equality_certified = false;
  std::string certification;           // criterion used, or why equality is not certified
};

/// Two pressures closer than this count as tied maximizers.
inline constexpr double kPressureTieTolerance = 1e-12;

/// log sum_i exp(sum_{j in J} d_j lambda_{i,j}), overflow-safe.
double pressure(const Spectrum& spectrum, const BlockSet& subset);
double pressure(const Spectrum& spectrum, const std::vector<std::size_t>& subset);

/// Gibbs weights nu_i proportional to exp(sum_{j in J} d_j lambda_{i,j}).
Distribution maximizing_distribution(const Spectrum& spectrum, const BlockSet& subset);
Distribution maximizing_distribution(const Spectrum& spectrum, const std::vector<std::size_t>& subset);

/// -sum nu_i log nu_i with 0 log 0 = 0.
double shannon_entropy(const Distribution& nu);

/// H(nu) + random_entropy(nu); dominates the Friedland entropy for every nu.
double friedland_upper_bound(const Spectrum& spectrum, const Distribution& nu);

/// Exact det(A_i - A_j) test for every pair i < j.
std::vector<CoincidenceCertificate> coincidence_certificate(const GeneratorFamily& family);

/// Maximum of the pressures over all 2^s block subsets. Without the family
/// no coincidence certificates exist, so the value is reported as a bound.
FriedlandReport friedland_entropy(const Spectrum& spectrum);
FriedlandReport friedland_entropy(const GeneratorFamily& family, const Spectrum& spectrum);

}  // namespace zkent
