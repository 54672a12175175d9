#include "zkent/friedland.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zkent/entropy.hpp"

namespace zkent {

namespace {

// Pressures of every subset are kept in the report only up to this many blocks.
constexpr std::size_t kMaxTabulatedBlocks = 20;

// Exponents within this distance of zero count as zero when testing hyperbolicity.
constexpr double kZeroExponent = 1e-9;

std::vector<double> subset_sums(const Spectrum& spectrum, const BlockSet& subset) {
  std::vector<double> sums(spectrum.generators, 0.0);
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    if (!subset.contains(j)) continue;
    for (std::size_t i = 0; i < spectrum.generators; ++i) sums[i] += spectrum.weighted(j, i);
  }
  return sums;
}

void check_subset(const Spectrum& spectrum, const BlockSet& subset) {
  if (spectrum.size() > BlockSet::kMaxBlocks) {
    throw DomainError(Errc::too_many_blocks, std::to_string(spectrum.size()) + " blocks exceed the limit of " +
                                                 std::to_string(BlockSet::kMaxBlocks));
  }
  if (spectrum.size() < 32 && (subset.mask() >> spectrum.size()) != 0) {
    throw DomainError(Errc::bad_subset, "subset names a block beyond " + std::to_string(spectrum.size()));
  }
}

double log_sum_exp(const std::vector<double>& xs) {
  const double top = *std::max_element(xs.begin(), xs.end());
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - top);
  return top + std::log(acc);
}

}  // namespace

BlockSet BlockSet::from_indices(const std::vector<std::size_t>& indices, std::size_t block_count) {
  std::uint32_t mask = 0;
  for (std::size_t j : indices) {
    if (j >= block_count || j >= kMaxBlocks) {
      throw DomainError(Errc::bad_subset, "block index " + std::to_string(j + 1) + " out of range 1.." +
                                              std::to_string(block_count));
    }
    if ((mask >> j) & 1u) throw DomainError(Errc::bad_subset, "block " + std::to_string(j + 1) + " repeated");
    mask |= 1u << j;
  }
  return BlockSet(mask);
}

std::vector<std::size_t> BlockSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < 32; ++j)
    if (contains(j)) out.push_back(j);
  return out;
}

std::string_view to_string(CoincidenceStatus status) {
  switch (status) {
    case CoincidenceStatus::measure_zero_certified: return "measure-zero-certified";
    case CoincidenceStatus::identical_generators: return "identical-generators";
    case CoincidenceStatus::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

double pressure(const Spectrum& spectrum, const BlockSet& subset) {
  check_subset(spectrum, subset);
  return log_sum_exp(subset_sums(spectrum, subset));
}

double pressure(const Spectrum& spectrum, const std::vector<std::size_t>& subset) {
  return pressure(spectrum, BlockSet::from_indices(subset, spectrum.size()));
}

Distribution maximizing_distribution(const Spectrum& spectrum, const BlockSet& subset) {
  check_subset(spectrum, subset);
  const std::vector<double> sums = subset_sums(spectrum, subset);
  const double log_z = log_sum_exp(sums);
  std::vector<double> p;
  p.reserve(sums.size());
  for (double x : sums) p.push_back(std::exp(x - log_z));
  const std::size_t k = p.size();
  return Distribution::validate(std::move(p), k);
}

Distribution maximizing_distribution(const Spectrum& spectrum, const std::vector<std::size_t>& subset) {
  return maximizing_distribution(spectrum, BlockSet::from_indices(subset, spectrum.size()));
}

double shannon_entropy(const Distribution& nu) {
  double h = 0.0;
  for (double p : nu.probs())
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

double friedland_upper_bound(const Spectrum& spectrum, const Distribution& nu) {
  return shannon_entropy(nu) + random_entropy(spectrum, nu).value;
}

std::vector<CoincidenceCertificate> coincidence_certificate(const GeneratorFamily& family) {
  std::vector<CoincidenceCertificate> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      CoincidenceCertificate cert;
      cert.first = i;
      cert.second = j;
      const IntMatrix diff = family.matrix(i) - family.matrix(j);
      cert.det_difference = diff.determinant();
      if (cert.det_difference != 0) {
        cert.status = CoincidenceStatus::measure_zero_certified;
      } else if (diff == IntMatrix(family.dim())) {
        cert.status = CoincidenceStatus::identical_generators;
      } else {
        cert.status = CoincidenceStatus::inconclusive;
      }
      out.push_back(std::move(cert));
    }
  }
  return out;
}

FriedlandReport friedland_entropy(const Spectrum& spectrum) {
  const std::size_t s = spectrum.size();
  if (s > BlockSet::kMaxBlocks) {
    throw DomainError(Errc::too_many_blocks, std::to_string(s) + " blocks exceed the limit of " +
                                                 std::to_string(BlockSet::kMaxBlocks));
  }
  FriedlandReport report;
  const std::uint64_t count = std::uint64_t{1} << s;
  const bool tabulate = s <= kMaxTabulatedBlocks;
  if (tabulate) report.pressures.reserve(count);

  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const double p = pressure(spectrum, BlockSet(static_cast<std::uint32_t>(mask)));
    if (tabulate) report.pressures.push_back(p);
    best = std::max(best, p);
  }
  // The first subset within the tie tolerance of the maximum wins.
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    const BlockSet set(static_cast<std::uint32_t>(mask));
    const double p = tabulate ? report.pressures[mask] : pressure(spectrum, set);
    if (p >= best - kPressureTieTolerance) report.tied_subsets.push_back(set);
  }
  report.best_subset = report.tied_subsets.front();
  report.value = pressure(spectrum, report.best_subset);
  report.maximizing_nu = maximizing_distribution(spectrum, report.best_subset);
  report.consistency_residual = std::abs(friedland_upper_bound(spectrum, report.maximizing_nu) - report.value);
  report.certification = "upper bound: no coincidence certificates available";
  return report;
}

FriedlandReport friedland_entropy(const GeneratorFamily& family, const Spectrum& spectrum) {
  FriedlandReport report = friedland_entropy(spectrum);
  report.coincidence = coincidence_certificate(family);
  const bool pairs_ok = std::all_of(report.coincidence.begin(), report.coincidence.end(), [](const auto& c) {
    return c.status == CoincidenceStatus::measure_zero_certified;
  });
  if (!pairs_ok) {
    report.certification = "upper bound: some coincidence set is not certified null";
    return report;
  }
  auto generator_all = [&](std::size_t i, auto pred) {
    return std::all_of(spectrum.blocks.begin(), spectrum.blocks.end(),
                       [&](const SpectrumBlock& b) { return pred(b.exponents[i]); });
  };
  if (family.kind() == ActionKind::invertible) {
    for (std::size_t i = 0; i < family.size(); ++i) {
      if (generator_all(i, [](double e) { return std::abs(e) > kZeroExponent; })) {
        report.equality_certified = true;
        report.certification = "equality, certified under hyperbolicity criterion (generator " +
                               std::to_string(i + 1) + " hyperbolic)";
        return report;
      }
    }
    report.certification = "upper bound: no hyperbolic generator";
    return report;
  }
  bool expanding = true;
  for (std::size_t i = 0; i < family.size(); ++i)
    expanding = expanding && generator_all(i, [](double e) { return e > kZeroExponent; });
  if (expanding) {
    report.equality_certified = true;
    report.certification = "equality, certified under expanding criterion (every generator expanding)";
  } else {
    report.certification = "upper bound: endomorphism family with a non-expanding generator";
  }
  return report;
}

}  // namespace zkent
