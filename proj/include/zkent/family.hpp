#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "zkent/errors.hpp"
#include "zkent/int_matrix.hpp"

namespace zkent {

// invertible: a Z^k action, every |det| = 1.
// endomorphism: a Z_+^k action, every det != 0.
enum class ActionKind { invertible, endomorphism };

std::string_view to_string(ActionKind kind);

struct Generator {
  std::string name;
  IntMatrix matrix;
};

// Generator indices are 0-based in the API and 1-based in messages.
class NonCommutingError : public DomainError {
 public:
  NonCommutingError(std::size_t first, std::size_t second, IntMatrix difference, const std::string& first_name = {},
                    const std::string& second_name = {});
  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }
  /// A_first * A_second - A_second * A_first
  const IntMatrix& difference() const noexcept { return difference_; }

 private:
  std::size_t first_;
  std::size_t second_;
  IntMatrix difference_;
};

/// A validated family of pairwise commuting, nonsingular integer matrices.
class GeneratorFamily {
 public:
  /// validate_family. All checks are exact integer arithmetic.
  static GeneratorFamily validate(std::vector<Generator> generators, ActionKind kind);
  static GeneratorFamily validate(const std::vector<IntMatrix>& matrices, ActionKind kind);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return generators_.size(); }
  ActionKind kind() const noexcept { return kind_; }

  const Generator& generator(std::size_t i) const { return generators_.at(i); }
  const IntMatrix& matrix(std::size_t i) const { return generators_.at(i).matrix; }
  const BigInt& determinant(std::size_t i) const { return determinants_.at(i); }
  std::span<const Generator> generators() const noexcept { return generators_; }

 private:
  GeneratorFamily() = default;

  std::size_t dim_ = 0;
  ActionKind kind_ = ActionKind::invertible;
  std::vector<Generator> generators_;
  std::vector<BigInt> determinants_;
};

/// Probability vector on the generators. Never renormalized silently.
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  /// validate_distribution
  static Distribution validate(std::vector<double> probs, std::size_t k);
  static Distribution uniform(std::size_t k);
  static Distribution vertex(std::size_t k, std::size_t i);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

/// A finite prefix of a generator sequence; letters are 0-based generator indices.
struct Word {
  std::vector<std::size_t> letters;
};

/// Exact product for the word: the first letter is applied first, so the
/// matrix is A_{w[n-1]} ... A_{w[1]} A_{w[0]}. The empty word gives the identity.
IntMatrix word_product(const GeneratorFamily& family, const Word& word);

}  // namespace zkent
