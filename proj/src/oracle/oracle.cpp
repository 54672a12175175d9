#include "zkent/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/SVD>

#include "zkent/philox.hpp"

namespace zkent {

namespace {

constexpr std::uint64_t kWordsPerChunk = 4096;
constexpr std::size_t kSamplesPerChunk = 256;
constexpr std::size_t kMaxProductBits = std::size_t{1} << 26;

// Binary-counter pairwise summation; the result depends only on the order of the inputs.
class PairwiseSum {
 public:
  void add(double x) {
    stack_.push_back({x, 1});
    while (stack_.size() >= 2 && stack_[stack_.size() - 1].count == stack_[stack_.size() - 2].count) {
      Node top = stack_.back();
      stack_.pop_back();
      stack_.back().value += top.value;
      stack_.back().count *= 2;
    }
  }
  double total() const {
    double acc = 0.0;
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) acc += it->value;
    return acc;
  }

 private:
  struct Node {
    double value;
    std::uint64_t count;
  };
  std::vector<Node> stack_;
};

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
};

template <typename Fn>
std::vector<Moments> run_chunks(std::size_t chunks, unsigned workers, Fn fn) {
  std::vector<Moments> out(chunks);
  const std::size_t threads = std::min<std::size_t>(std::max(1u, workers), chunks);
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) out[c] = fn(c);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t c = next++; c < chunks; c = next++) out[c] = fn(c);
      } catch (...) {
        errors[t] = std::current_exception();
        next = chunks;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

Moments reduce(const std::vector<Moments>& parts) {
  PairwiseSum sum, sum_sq;
  for (const auto& p : parts) {
    sum.add(p.sum);
    sum_sq.add(p.sum_sq);
  }
  return {sum.total(), sum_sq.total()};
}

void check_word_length(std::size_t n) {
  if (n < 1) throw DomainError(Errc::bad_sample_count, "word length n must be at least 1");
}

void check_distribution(const Distribution& nu, std::size_t k) {
  if (nu.size() != k) {
    throw DomainError(Errc::length_mismatch, "distribution has " + std::to_string(nu.size()) + " entries for " +
                                                 std::to_string(k) + " generators");
  }
}

std::uint64_t word_count(std::size_t k, std::size_t n) {
  std::uint64_t total = 1;
  for (std::size_t r = 0; r < n; ++r) {
    if (total > kEnumerationCap / k) {
      throw DomainError(Errc::enumeration_too_large, std::to_string(k) + "^" + std::to_string(n) +
                                                         " words exceed the enumeration cap 2^24");
    }
    total *= k;
  }
  return total;
}

// Exact expectation sum_w nu(w) f(w) over all k^n words.
template <typename Fn>
double enumerate_words(const Distribution& nu, std::size_t n, unsigned workers, Fn value) {
  const std::size_t k = nu.size();
  const std::uint64_t total = word_count(k, n);
  const std::size_t chunks = static_cast<std::size_t>((total + kWordsPerChunk - 1) / kWordsPerChunk);
  auto parts = run_chunks(chunks, workers, [&](std::size_t c) {
    const std::uint64_t lo = c * kWordsPerChunk;
    const std::uint64_t hi = std::min(total, lo + kWordsPerChunk);
    std::vector<std::size_t> word(n);
    std::uint64_t idx = lo;
    for (std::size_t r = 0; r < n; ++r, idx /= k) word[r] = static_cast<std::size_t>(idx % k);
    PairwiseSum acc;
    for (std::uint64_t w = lo; w < hi; ++w) {
      double weight = 1.0;
      for (std::size_t letter : word) weight *= nu[letter];
      if (weight > 0.0) acc.add(weight * value(word));
      for (std::size_t r = 0; r < n; ++r) {
        if (++word[r] < k) break;
        word[r] = 0;
      }
    }
    return Moments{acc.total(), 0.0};
  });
  return reduce(parts).sum;
}

std::size_t draw_letter(PhiloxStream& stream, const std::vector<double>& cumulative) {
  const double u = stream.uniform();
  for (std::size_t i = 0; i < cumulative.size(); ++i)
    if (u < cumulative[i]) return i;
  // Rounding left u above the last partial sum: fall back to the last letter with mass.
  for (std::size_t i = cumulative.size(); i-- > 0;)
    if (i == 0 || cumulative[i] > cumulative[i - 1]) return i;
  return 0;
}

template <typename Fn>
OracleEstimate sample_words(const Distribution& nu, std::size_t n, std::size_t samples, std::uint64_t seed,
                            unsigned workers, Fn value) {
  if (samples < 1) throw DomainError(Errc::bad_sample_count, "Monte Carlo needs at least one sample");
  std::vector<double> cumulative(nu.size());
  double running = 0.0;
  for (std::size_t i = 0; i < nu.size(); ++i) cumulative[i] = running += nu[i];

  const std::size_t chunks = (samples + kSamplesPerChunk - 1) / kSamplesPerChunk;
  auto parts = run_chunks(chunks, workers, [&](std::size_t c) {
    const std::size_t lo = c * kSamplesPerChunk;
    const std::size_t hi = std::min(samples, lo + kSamplesPerChunk);
    std::vector<std::size_t> word(n);
    PairwiseSum sum, sum_sq;
    for (std::size_t s = lo; s < hi; ++s) {
      PhiloxStream stream(seed, s);
      for (auto& letter : word) letter = draw_letter(stream, cumulative);
      const double v = value(word);
      sum.add(v);
      sum_sq.add(v * v);
    }
    return Moments{sum.total(), sum_sq.total()};
  });
  const Moments m = reduce(parts);
  const double count = static_cast<double>(samples);
  OracleEstimate out;
  out.estimate = m.sum / count;
  out.n = n;
  out.samples = samples;
  out.seed = seed;
  const double var = samples > 1 ? (m.sum_sq - count * out.estimate * out.estimate) / (count - 1.0) : 0.0;
  out.std_error = std::sqrt(std::max(0.0, var) / count);
  return out;
}

template <typename Fn>
OracleEstimate run_oracle(const Distribution& nu, std::size_t n, OracleMode mode, unsigned workers, Fn value) {
  if (!mode.is_exact()) return sample_words(nu, n, mode.samples, mode.seed, workers, value);
  OracleEstimate out;
  out.estimate = enumerate_words(nu, n, workers, value);
  out.n = n;
  out.seed = mode.seed;
  return out;
}

std::vector<std::vector<double>> weighted_table(const Spectrum& spectrum) {
  std::vector<std::vector<double>> table(spectrum.generators, std::vector<double>(spectrum.size()));
  for (std::size_t i = 0; i < spectrum.generators; ++i)
    for (std::size_t j = 0; j < spectrum.size(); ++j) table[i][j] = spectrum.weighted(j, i);
  return table;
}

void combinations(std::size_t d, std::size_t m, std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> pick(m);
  for (std::size_t i = 0; i < m; ++i) pick[i] = i;
  while (true) {
    out.push_back(pick);
    std::size_t i = m;
    while (i > 0 && pick[i - 1] == d - m + i - 1) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
}

double log_sigma_max(const IntMatrix& m) {
  const ScaledMatrix scaled = m.to_scaled();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled.mantissa);
  const double top = svd.singularValues()(0);
  if (!(top > 0.0)) return -std::numeric_limits<double>::infinity();
  return std::log(top) + static_cast<double>(scaled.exponent) * std::numbers::ln2;
}

struct Rational {
  BigInt num;
  BigInt den;
};

// The exact value of the shortest decimal that round-trips to x.
Rational shortest_decimal(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::scientific);
  const std::string text(buf, res.ptr);
  const auto e = text.find('e');
  const int exponent = std::stoi(text.substr(e + 1));
  std::string digits;
  int frac = 0;
  bool after_point = false;
  for (char ch : text.substr(0, e)) {
    if (ch == '.') {
      after_point = true;
    } else {
      digits += ch;
      frac += after_point;
    }
  }
  Rational r{BigInt(digits), 1};
  const int shift = exponent - frac;
  const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::abs(shift)));
  (shift >= 0 ? r.num : r.den) *= scale;
  return r;
}

}  // namespace

OracleEstimate block_word_oracle(const Spectrum& spectrum, const Distribution& nu, std::size_t n,
                                 OracleMode mode, unsigned workers) {
  check_word_length(n);
  check_distribution(nu, spectrum.generators);
  const auto table = weighted_table(spectrum);
  const std::size_t s = spectrum.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  auto value = [&](const std::vector<std::size_t>& word) {
    std::vector<double> partial(s, 0.0);
    std::vector<double> best(s, -std::numeric_limits<double>::infinity());
    for (std::size_t letter : word) {
      for (std::size_t j = 0; j < s; ++j) {
        partial[j] += table[letter][j];
        best[j] = std::max(best[j], partial[j]);
      }
    }
    double total = 0.0;
    for (double b : best) total += std::max(0.0, b);
    return total * inv_n;
  };
  return run_oracle(nu, n, mode, workers, value);
}

double endpoint_functional(const Spectrum& spectrum, const Distribution& nu, std::size_t n, EndpointRoute route) {
  check_word_length(n);
  check_distribution(nu, spectrum.generators);
  const auto table = weighted_table(spectrum);
  const std::size_t k = nu.size();
  const std::size_t s = spectrum.size();
  const double inv_n = 1.0 / static_cast<double>(n);

  auto from_counts = [&](const std::vector<std::size_t>& counts) {
    double total = 0.0;
    for (std::size_t j = 0; j < s; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < k; ++i) sum += static_cast<double>(counts[i]) * table[i][j];
      total += std::max(0.0, sum);
    }
    return total * inv_n;
  };

  if (route == EndpointRoute::per_word) {
    return enumerate_words(nu, n, 1, [&](const std::vector<std::size_t>& word) {
      std::vector<std::size_t> counts(k, 0);
      for (std::size_t letter : word) ++counts[letter];
      return from_counts(counts);
    });
  }

  PairwiseSum acc;
  std::vector<std::size_t> counts(k, 0);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  auto visit = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i + 1 == k) {
      counts[i] = left;
      double log_w = log_n_fact;
      for (std::size_t a = 0; a < k; ++a) {
        if (counts[a] == 0) continue;
        if (nu[a] == 0.0) return;
        log_w += static_cast<double>(counts[a]) * std::log(nu[a]) - std::lgamma(static_cast<double>(counts[a]) + 1.0);
      }
      acc.add(std::exp(log_w) * from_counts(counts));
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      counts[i] = c;
      self(self, i + 1, left - c);
    }
  };
  visit(visit, 0, n);
  return acc.total();
}

double log_expansion(const IntMatrix& product) {
  if (product.max_bits() > kMaxProductBits) {
    throw DomainError(Errc::overflow, "word product exceeds " + std::to_string(kMaxProductBits) + " bits");
  }
  const std::size_t d = product.dim();
  double best = 0.0;
  for (std::size_t m = 1; m <= d; ++m) {
    double value;
    if (m == 1) {
      value = log_sigma_max(product);
    } else if (m == d) {
      const BigInt det = product.determinant();
      value = det == 0 ? -std::numeric_limits<double>::infinity() : log_abs(det);
    } else {
      std::vector<std::vector<std::size_t>> subsets;
      combinations(d, m, subsets);
      IntMatrix compound(subsets.size());
      for (std::size_t r = 0; r < subsets.size(); ++r)
        for (std::size_t c = 0; c < subsets.size(); ++c) compound(r, c) = product.minor(subsets[r], subsets[c]);
      value = log_sigma_max(compound);
    }
    best = std::max(best, value);
  }
  return best;
}

OracleEstimate singular_value_oracle(const GeneratorFamily& family, const Distribution& nu, std::size_t n,
                                     std::size_t samples, std::uint64_t seed, unsigned workers) {
  check_word_length(n);
  check_distribution(nu, family.size());
  const double inv_n = 1.0 / static_cast<double>(n);
  return sample_words(nu, n, samples, seed, workers, [&](const std::vector<std::size_t>& letters) {
    return log_expansion(word_product(family, Word{letters})) * inv_n;
  });
}

OracleEstimate circle_cover_oracle(std::span<const BigInt> degrees, const Distribution& nu, std::size_t n,
                                   double eps, OracleMode mode, unsigned workers) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError(Errc::bad_epsilon, "eps must lie in (0, 1), got " + std::to_string(eps));
  }
  check_word_length(n);
  check_distribution(nu, degrees.size());
  std::vector<BigInt> magnitude;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    magnitude.push_back(boost::multiprecision::abs(degrees[i]));
    if (magnitude.back() < 2) {
      throw DomainError(Errc::zero_degree, "circle map " + std::to_string(i + 1) + " is not expanding (|deg| < 2)");
    }
  }
  const Rational e = shortest_decimal(eps);
  const double inv_n = 1.0 / static_cast<double>(n);
  return run_oracle(nu, n, mode, workers, [&](const std::vector<std::size_t>& word) {
    BigInt product = e.den;
    for (std::size_t letter : word) product *= magnitude[letter];
    return log_abs(product / e.num) * inv_n;
  });
}

}  // namespace zkent
