#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "zkent/family.hpp"
#include "zkent/spectrum.hpp"

namespace zkent {

inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 24;

struct OracleEstimate {
  double estimate = 0.0;
  std::size_t n = 0;
  std::size_t samples = 0;  // 0 means exact enumeration
  std::optional<double> std_error;
  std::uint64_t seed = 0;
};

// samples == 0 selects exact enumeration over all k^n words.
struct OracleMode {
  std::size_t samples = 0;
  std::uint64_t seed = 0;

  static OracleMode exact() { return {}; }
  static OracleMode monte_carlo(std::size_t samples, std::uint64_t seed) { return {samples, seed}; }
  bool is_exact() const noexcept { return samples == 0; }
};

// (1/n) E[ sum_j max(0, max_{t<n} sum_{r<=t} d_j lambda_{w_r, j}) ]
OracleEstimate block_word_oracle(const Spectrum& spectrum, const Distribution& nu, std::size_t n,
                                 OracleMode mode, unsigned workers = 1);

// (1/n) E[ sum_j max(0, sum_{r<n} d_j lambda_{w_r, j}) ]. The endpoint sum only depends on letter
// counts, so it can be computed from multinomial weights as well as by walking every word.
enum class EndpointRoute { multinomial, per_word };
double endpoint_functional(const Spectrum& spectrum, const Distribution& nu, std::size_t n, EndpointRoute route);

// (1/n) E[ sum_l log max(1, sigma_l(P_w)) ] over exact integer products P_w.
OracleEstimate singular_value_oracle(const GeneratorFamily& family, const Distribution& nu, std::size_t n,
                                     std::size_t samples, std::uint64_t seed, unsigned workers = 1);

// sum_l log max(1, sigma_l(P)) = max(0, max_m log sigma_max(m-th compound of P)).
double log_expansion(const IntMatrix& product);

// (1/n) E[ log floor(prod_r |p_{w_r}| / eps) ] with eps taken as the exact rational of its shortest decimal form.
OracleEstimate circle_cover_oracle(std::span<const BigInt> degrees, const Distribution& nu, std::size_t n,
                                   double eps, OracleMode mode, unsigned workers = 1);

}  // namespace zkent
