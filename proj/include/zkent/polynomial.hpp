#pragma once

#include <complex>
#include <vector>

#include "zkent/int_matrix.hpp"

namespace zkent {

// Integer polynomial, coefficients from the constant term upwards; no trailing zeros.
using IntPoly = std::vector<BigInt>;

// det(xI - A), exact (Faddeev-LeVerrier; every division is exact over the integers).
IntPoly characteristic_polynomial(const IntMatrix& a);

IntPoly derivative(const IntPoly& p);
// Primitive gcd over Q[x] (content removed, positive leading coefficient).
IntPoly polynomial_gcd(IntPoly a, IntPoly b);
// p / gcd(p, p'): same roots as p, each simple.
IntPoly squarefree_part(const IntPoly& p);

// Roots of a polynomial with simple roots: companion eigenvalues, then Newton polishing.
std::vector<std::complex<double>> polynomial_roots(const IntPoly& p);

}  // namespace zkent
