#include "zkent/polynomial.hpp"

#include <cmath>

#include <lapacke.h>

#include "zkent/errors.hpp"

namespace zkent {

namespace {

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

std::size_t degree(const IntPoly& p) { return p.size() - 1; }

BigInt content(const IntPoly& p) {
  BigInt g = 0;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

IntPoly primitive(IntPoly p) {
  trim(p);
  if (p.empty()) return p;
  BigInt g = content(p);
  if (p.back() < 0) g = -g;
  for (auto& c : p) c /= g;
  return p;
}

// lc(b)^(deg a - deg b + 1) * a mod b, in Z[x].
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const BigInt& lead = b.back();
  while (!a.empty() && a.size() >= b.size()) {
    const BigInt top = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lead;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= top * b[i];
    trim(a);
  }
  return a;
}

// Exact quotient p / g when g divides p in Q[x] and g is primitive.
IntPoly exact_quotient(IntPoly p, const IntPoly& g) {
  IntPoly q(p.size() - g.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const BigInt& top = p[k + degree(g)];
    if (top % g.back() != 0) throw DomainError(Errc::overflow, "inexact polynomial division");
    q[k] = top / g.back();
    for (std::size_t i = 0; i < g.size(); ++i) p[i + k] -= q[k] * g[i];
  }
  trim(q);
  return q;
}

using LongComplex = std::complex<long double>;

LongComplex horner(const std::vector<long double>& c, LongComplex z) {
  LongComplex acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

}  // namespace

IntPoly characteristic_polynomial(const IntMatrix& a) {
  const std::size_t n = a.dim();
  IntPoly c(n + 1);
  c[n] = 1;
  IntMatrix m(n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    // M_k = A M_{k-1} + c_{n-k+1} I,  c_{n-k} = -tr(A M_k) / k
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
    const IntMatrix am = a * m;
    BigInt trace = 0;
    for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
    c[n - k] = -trace / static_cast<long long>(k);
  }
  return c;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long long>(i));
  trim(d);
  return d;
}

IntPoly polynomial_gcd(IntPoly a, IntPoly b) {
  a = primitive(std::move(a));
  b = primitive(std::move(b));
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    IntPoly r = primitive(pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

IntPoly squarefree_part(const IntPoly& p) {
  IntPoly prim = primitive(p);
  if (prim.size() <= 2) return prim;
  const IntPoly g = polynomial_gcd(prim, derivative(prim));
  if (g.size() <= 1) return prim;
  return primitive(exact_quotient(prim, g));
}

std::vector<std::complex<double>> polynomial_roots(const IntPoly& p) {
  const std::size_t n = p.size() - 1;
  std::vector<std::complex<double>> roots;
  if (n == 0) return roots;
  std::vector<long double> coeffs;
  for (const auto& c : p) coeffs.push_back(c.convert_to<long double>());
  for (auto c : coeffs) {
    if (!std::isfinite(static_cast<double>(c / coeffs.back()))) {
      throw DomainError(Errc::overflow, "characteristic polynomial exceeds double range");
    }
  }
  if (n == 1) return {std::complex<double>(static_cast<double>(-coeffs[0] / coeffs[1]), 0.0)};

  std::vector<double> comp(n * n, 0.0);  // column-major companion matrix
  for (std::size_t i = 1; i < n; ++i) comp[i + (i - 1) * n] = 1.0;
  for (std::size_t i = 0; i < n; ++i) comp[i + (n - 1) * n] = static_cast<double>(-coeffs[i] / coeffs[n]);
  std::vector<double> wr(n), wi(n);
  const auto ln = static_cast<lapack_int>(n);
  lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', ln, comp.data(), ln, wr.data(), wi.data(), nullptr, 1,
                                  nullptr, 1);
  if (info != 0) throw DomainError(Errc::residual_exceeded, "companion eigenvalues failed (dgeev info " + std::to_string(info) + ")");

  std::vector<long double> dcoeffs;
  for (std::size_t i = 1; i < coeffs.size(); ++i) dcoeffs.push_back(coeffs[i] * static_cast<long double>(i));
  for (std::size_t i = 0; i < n; ++i) {
    LongComplex z(wr[i], wi[i]);
    for (int it = 0; it < 4; ++it) {
      const LongComplex f = horner(coeffs, z), df = horner(dcoeffs, z);
      if (std::abs(df) == 0.0L) break;
      const LongComplex next = z - f / df;
      if (!(std::abs(horner(coeffs, next)) < std::abs(f))) break;
      z = next;
    }
    roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return roots;
}

}  // namespace zkent
