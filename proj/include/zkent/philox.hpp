#pragma once

#include <array>
#include <cstdint>

namespace zkent {

// Philox4x32-10 counter-based generator.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Independent stream for one Monte Carlo sample: counter = (draw lo, draw hi, sample lo, sample hi), key = seed.
class PhiloxStream {
 public:
  PhiloxStream(std::uint64_t seed, std::uint64_t sample);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  PhiloxKey key_;
  std::uint64_t sample_;
  std::uint64_t draw_ = 0;
  PhiloxCounter buffer_{};
  int used_ = 4;
};

}  // namespace zkent
