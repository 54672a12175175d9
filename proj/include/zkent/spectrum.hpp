#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "zkent/family.hpp"

namespace zkent {

struct SpectralTolerances {
  double grouping = 1e-8;   // relative modulus gap that separates two clusters
  double invariance = 1e-8; // largest admissible invariance defect
};

// One common invariant subspace V_j. Exponents are log-moduli: exponents[i]
// is log of the common |eigenvalue| of generator i restricted to V_j.
struct SpectrumBlock {
  std::size_t dim = 0;
  std::vector<double> exponents;
  Eigen::MatrixXd basis;               // d x dim, orthonormal columns; empty for tabulated spectra
  std::vector<double> modulus_spread;  // per generator, relative
};

struct Spectrum {
  std::size_t dim = 0;
  std::size_t generators = 0;
  std::vector<SpectrumBlock> blocks;   // sorted by exponent vector, descending
  double residual = 0.0;

  std::size_t size() const noexcept { return blocks.size(); }
  /// d_j * lambda_{i,j}
  double weighted(std::size_t block, std::size_t generator) const {
    return static_cast<double>(blocks[block].dim) * blocks[block].exponents[generator];
  }
};

/// Builds a spectrum from a table: dims[j] and exponents[j][i]. Blocks carry no
/// basis. Used for circle maps and for synthetic spectra.
Spectrum tabulated_spectrum(const std::vector<std::size_t>& dims,
                            const std::vector<std::vector<double>>& exponents);

/// Common invariant decomposition of a commuting family into constant-modulus
/// blocks. Throws GroupingAmbiguous or ResidualExceeded.
Spectrum joint_spectrum(const GeneratorFamily& family, const SpectralTolerances& tol = {});

/// sum_j d_j * max(lambda_{i,j}, 0)
double generator_pesin_entropy(const Spectrum& spectrum, std::size_t generator);

/// Largest relative out-of-block component of A_i applied to a block basis.
double spectrum_residual(const GeneratorFamily& family, const Spectrum& spectrum);

/// Sorts blocks descending by exponent vector (exponents compared on a 1e-9 grid).
void sort_blocks(std::vector<SpectrumBlock>& blocks);

}  // namespace zkent
