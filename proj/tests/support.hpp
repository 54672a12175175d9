#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "zkent/family.hpp"
#include "zkent/spectrum.hpp"

namespace zkent::test {

inline IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& r : rows) {
    std::vector<BigInt> row;
    for (long long v : r) row.emplace_back(v);
    out.push_back(std::move(row));
  }
  return IntMatrix::from_rows(out);
}

inline const double kLogPhi2 = 0.96242365011920689;  // log((3+sqrt5)/2)

inline GeneratorFamily torus_pair() {
  return GeneratorFamily::validate({mat({{2, 1}, {1, 1}}), mat({{1, -1}, {-1, 2}})}, ActionKind::invertible);
}

inline GeneratorFamily circle_pair() {
  return GeneratorFamily::validate({mat({{2}}), mat({{3}})}, ActionKind::endomorphism);
}

// Companion matrix of x^3 - x - 1 (determinant 1, one real and one complex block).
inline IntMatrix plastic_companion() { return mat({{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}); }

inline IntMatrix power(const IntMatrix& a, unsigned m) {
  IntMatrix out = IntMatrix::identity(a.dim());
  for (unsigned i = 0; i < m; ++i) out = out * a;
  return out;
}

// c0 I + c1 M + c2 M^2 + ...
inline IntMatrix polynomial(const IntMatrix& m, const std::vector<long long>& coeffs) {
  IntMatrix out(m.dim());
  IntMatrix p = IntMatrix::identity(m.dim());
  for (long long c : coeffs) {
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t col = 0; col < m.dim(); ++col) out(r, col) += c * p(r, col);
    p = p * m;
  }
  return out;
}

// Companion matrix of x^d + a_{d-1} x^{d-1} + ... + a_0.
inline IntMatrix companion(const std::vector<long long>& low_coeffs) {
  const std::size_t d = low_coeffs.size();
  IntMatrix c(d);
  for (std::size_t i = 1; i < d; ++i) c(i, i - 1) = 1;
  for (std::size_t i = 0; i < d; ++i) c(i, d - 1) = -low_coeffs[i];
  return c;
}

// Random commuting family of unimodular matrices: polynomials in one random companion matrix.
inline std::vector<IntMatrix> random_unimodular_family(std::mt19937_64& rng, std::size_t k) {
  std::uniform_int_distribution<int> dim(2, 4), coef(-3, 3), sign(0, 1), exp(1, 3);
  const std::size_t d = static_cast<std::size_t>(dim(rng));
  std::vector<long long> poly(d);
  for (auto& c : poly) c = coef(rng);
  poly[0] = sign(rng) ? 1 : -1;
  const IntMatrix c = companion(poly);
  std::vector<IntMatrix> out;
  while (out.size() < k) {
    std::vector<long long> q(d);
    for (auto& v : q) v = coef(rng);
    IntMatrix cand = polynomial(c, q);
    const BigInt det = cand.determinant();
    if (det == 1 || det == -1) {
      out.push_back(std::move(cand));
    } else if (sign(rng) && sign(rng)) {
      out.push_back(power(c, static_cast<unsigned>(exp(rng))));
    }
  }
  return out;
}

inline Distribution random_distribution(std::mt19937_64& rng, std::size_t k) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(k);
  double sum = 0.0;
  for (auto& x : w) sum += x = e(rng);
  for (auto& x : w) x /= sum;
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < k; ++i) rest -= w[i];
  w[k - 1] = rest;
  return Distribution::validate(w, k);
}

inline Spectrum random_tabulated(std::mt19937_64& rng, std::size_t s, std::size_t k) {
  std::uniform_int_distribution<int> dim(1, 3);
  std::normal_distribution<double> ex(0.0, 1.0);
  std::vector<std::size_t> dims(s);
  std::vector<std::vector<double>> exps(s, std::vector<double>(k));
  for (std::size_t j = 0; j < s; ++j) {
    dims[j] = static_cast<std::size_t>(dim(rng));
    for (auto& e : exps[j]) e = ex(rng);
  }
  return tabulated_spectrum(dims, exps);
}

}  // namespace zkent::test
