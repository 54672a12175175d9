#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace zkent {

using BigInt = boost::multiprecision::cpp_int;

// A d x d matrix scaled by a power of two: value = mantissa * 2^exponent.
// Used to move arbitrarily large integer matrices into floating point.
struct ScaledMatrix {
  Eigen::MatrixXd mantissa;
  long exponent = 0;
};

/// Square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim);

  static IntMatrix identity(std::size_t dim);
  /// Throws DomainError(non_square) unless rows form a nonempty square array.
  static IntMatrix from_rows(const std::vector<std::vector<BigInt>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  BigInt& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

  bool operator==(const IntMatrix&) const = default;

  /// Exact determinant by fraction-free (Bareiss) elimination.
  BigInt determinant() const;
  // Exact inverse of a matrix with determinant +-1; throws DeterminantNotUnit otherwise.
  IntMatrix inverse() const;
  /// Determinant of the submatrix on the given rows and columns.
  BigInt minor(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

  bool is_identity() const;
  /// Largest bit length over all entries (0 for the zero matrix).
  std::size_t max_bits() const;

  /// Conversion to doubles; entries beyond double range become +-inf.
  Eigen::MatrixXd to_double() const;
  /// Overflow-safe conversion keeping ~53 significant bits of the largest entry.
  ScaledMatrix to_scaled() const;

  std::vector<std::vector<BigInt>> rows() const;
  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  std::vector<BigInt> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);

/// log|x| for a nonzero big integer, accurate to double precision at any size.
double log_abs(const BigInt& x);

}  // namespace zkent
