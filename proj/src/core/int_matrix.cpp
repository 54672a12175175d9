#include "zkent/int_matrix.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "zkent/errors.hpp"

namespace zkent {

namespace {

// Significant bits kept per entry when converting to double.
constexpr std::size_t kMantissaBits = 60;

std::size_t bit_length(const BigInt& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(x)) + 1;
}

// Fraction-free Gaussian elimination on a dense row-major n x n array.
BigInt bareiss(std::vector<BigInt> m, std::size_t n) {
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k * n + k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot * n + k] == 0) ++pivot;
      if (pivot == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(m[k * n + c], m[pivot * n + c]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i * n + j] = (m[i * n + j] * m[k * n + k] - m[i * n + k] * m[k * n + j]) / prev;
      }
      m[i * n + k] = 0;
    }
    prev = m[k * n + k];
  }
  BigInt det = m[n * n - 1];
  return sign < 0 ? BigInt(-det) : det;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

IntMatrix IntMatrix::identity(std::size_t dim) {
  IntMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows) {
  if (rows.empty()) throw DomainError(Errc::non_square, "matrix has no rows");
  IntMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) {
      std::ostringstream os;
      os << "row " << r + 1 << " has " << rows[r].size() << " entries, expected " << rows.size();
      throw DomainError(Errc::non_square, os.str());
    }
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

BigInt IntMatrix::determinant() const { return bareiss(entries_, dim_); }

BigInt IntMatrix::minor(const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) const {
  if (rows.size() != cols.size()) throw DomainError(Errc::non_square, "minor needs as many rows as columns");
  const std::size_t n = rows.size();
  std::vector<BigInt> sub(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) sub[r * n + c] = (*this)(rows[r], cols[c]);
  return bareiss(std::move(sub), n);
}

bool IntMatrix::is_identity() const { return *this == identity(dim_); }

std::size_t IntMatrix::max_bits() const {
  std::size_t bits = 0;
  for (const auto& e : entries_) bits = std::max(bits, bit_length(e));
  return bits;
}

Eigen::MatrixXd IntMatrix::to_double() const {
  Eigen::MatrixXd out(dim_, dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(r, c) = (*this)(r, c).convert_to<double>();
  return out;
}

IntMatrix IntMatrix::inverse() const {
  const BigInt det = determinant();
  if (det != 1 && det != -1) {
    throw DomainError(Errc::determinant_not_unit, "matrix with determinant " + det.str() + " has no integer inverse");
  }
  IntMatrix out(dim_);
  if (dim_ == 1) {
    out(0, 0) = det;
    return out;
  }
  std::vector<std::size_t> rows, cols;
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      rows.clear();
      cols.clear();
      for (std::size_t i = 0; i < dim_; ++i) {
        if (i != r) rows.push_back(i);
        if (i != c) cols.push_back(i);
      }
      // adj(c, r) = (-1)^(r+c) M_rc, and det^-1 = det.
      const BigInt cof = minor(rows, cols);
      out(c, r) = ((r + c) % 2 ? -cof : cof) * det;
    }
  }
  return out;
}

ScaledMatrix IntMatrix::to_scaled() const {
  ScaledMatrix out;
  const std::size_t top = max_bits();
  out.exponent = top > kMantissaBits ? static_cast<long>(top - kMantissaBits) : 0;
  out.mantissa.resize(dim_, dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) {
      const BigInt& e = (*this)(r, c);
      const std::size_t bits = bit_length(e);
      // Per-entry extraction: e = m * 2^shift with m carrying at most kMantissaBits bits.
      const long shift = bits > kMantissaBits ? static_cast<long>(bits - kMantissaBits) : 0;
      BigInt mag = boost::multiprecision::abs(e) >> shift;
      double v = std::ldexp(mag.convert_to<double>(), static_cast<int>(shift - out.exponent));
      out.mantissa(r, c) = e < 0 ? -v : v;
    }
  }
  return out;
}

std::vector<std::vector<BigInt>> IntMatrix::rows() const {
  std::vector<std::vector<BigInt>> out(dim_, std::vector<BigInt>(dim_));
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out[r][c] = (*this)(r, c);
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < dim_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < dim_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError(Errc::dim_mismatch, "cannot multiply matrices of different sizes");
  const std::size_t n = a.dim();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.dim() != b.dim()) throw DomainError(Errc::dim_mismatch, "cannot subtract matrices of different sizes");
  IntMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

double log_abs(const BigInt& x) {
  const std::size_t bits = bit_length(x);
  if (bits <= kMantissaBits) return std::log(std::abs(x.convert_to<double>()));
  const std::size_t shift = bits - kMantissaBits;
  BigInt top = boost::multiprecision::abs(x) >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

}  // namespace zkent
