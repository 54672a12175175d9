#include "zkent/spectrum.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <cmath>
#include <numeric>
#include <sstream>

#include <lapacke.h>

#include "zkent/polynomial.hpp"

namespace zkent {

namespace {

// Combined cluster bases with a smaller relative singular value than this do
// not form a direct sum; the split is treated as ambiguous.
constexpr double kMinSubspaceSeparation = 1e-6;

enum class SplitOutcome { unsplit, split, ambiguous };

struct SplitResult {
  SplitOutcome outcome = SplitOutcome::unsplit;
  std::vector<Eigen::MatrixXd> bases;  // in ambient coordinates, largest modulus first
  std::vector<double> moduli;          // eigenvalue moduli of the restricted operator
};

struct Schur {
  Eigen::MatrixXd t;
  Eigen::MatrixXd q;
  std::vector<double> wr, wi;
};

Schur real_schur(const Eigen::MatrixXd& b) {
  const auto n = static_cast<lapack_int>(b.rows());
  Schur s{b, Eigen::MatrixXd(n, n), std::vector<double>(n), std::vector<double>(n)};
  lapack_int sdim = 0;
  lapack_int info = LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', 'N', nullptr, n, s.t.data(), n, &sdim,
                                  s.wr.data(), s.wi.data(), s.q.data(), n);
  if (info != 0) {
    throw DomainError(Errc::residual_exceeded, "real Schur factorization failed (dgees info " +
                                                   std::to_string(info) + ")");
  }
  return s;
}

using Roots = std::vector<std::complex<double>>;

// Roots of the square-free part of each generator's characteristic polynomial. They are simple, hence
// well conditioned, while eigenvalues of a defective generator computed in floating point are off by
// about eps^(1/m) for an m x m Jordan block.
std::vector<Roots> exact_root_sets(const GeneratorFamily& family) {
  std::vector<Roots> out;
  for (std::size_t i = 0; i < family.size(); ++i)
    out.push_back(polynomial_roots(squarefree_part(characteristic_polynomial(family.matrix(i)))));
  return out;
}

// Replaces each computed eigenvalue by the modulus of the nearest exact root. Returns false when the
// nearest root is not clearly closer than the runner-up.
bool snap_moduli(const std::vector<std::complex<double>>& eigs, const Roots& roots, std::vector<double>& moduli) {
  moduli.clear();
  bool clear = true;
  for (const auto& z : eigs) {
    double best = std::numeric_limits<double>::infinity(), second = best;
    std::size_t arg = 0;
    for (std::size_t r = 0; r < roots.size(); ++r) {
      const double dist = std::abs(z - roots[r]);
      if (dist < best) {
        second = best;
        best = dist;
        arg = r;
      } else if (dist < second) {
        second = dist;
      }
    }
    if (!(best < 0.5 * second)) clear = false;
    moduli.push_back(roots.empty() ? std::abs(z) : std::abs(roots[arg]));
  }
  return clear;
}

std::string format_moduli(const std::vector<double>& moduli) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < moduli.size(); ++i) os << (i ? ", " : "") << moduli[i];
  return os.str();
}

// Splits the invariant subspace spanned by `basis` according to the modulus
// clusters of `a` restricted to it.
SplitResult split_block(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& a, const Roots& roots, double tol) {
  SplitResult result;
  const Eigen::Index m = basis.cols();
  const Eigen::MatrixXd restricted = basis.transpose() * a * basis;
  if (m == 1) {
    result.moduli = {std::abs(restricted(0, 0))};
    return result;
  }
  const Schur schur = real_schur(restricted);
  std::vector<std::complex<double>> eigs;
  for (Eigen::Index i = 0; i < m; ++i) eigs.emplace_back(schur.wr[i], schur.wi[i]);
  std::vector<double> moduli;
  const bool snapped = snap_moduli(eigs, roots, moduli);
  result.moduli = moduli;
  if (!snapped) {
    result.outcome = SplitOutcome::ambiguous;
    return result;
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return moduli[x] > moduli[y]; });

  std::vector<std::vector<std::size_t>> clusters{{order[0]}};
  for (std::size_t r = 1; r < order.size(); ++r) {
    const double prev = moduli[order[r - 1]];
    const double cur = moduli[order[r]];
    if ((prev - cur) > tol * prev) clusters.emplace_back();
    clusters.back().push_back(order[r]);
  }
  for (const auto& c : clusters) {
    const double hi = moduli[c.front()];
    const double lo = moduli[c.back()];
    if (hi - lo > tol * hi) {
      result.outcome = SplitOutcome::ambiguous;
      return result;
    }
  }
  if (clusters.size() == 1) return result;

  Eigen::MatrixXd combined(m, m);
  Eigen::Index filled = 0;
  for (const auto& c : clusters) {
    std::vector<lapack_logical> select(m, 0);
    for (std::size_t idx : c) select[idx] = 1;
    Eigen::MatrixXd t = schur.t;
    Eigen::MatrixXd q = schur.q;
    std::vector<double> wr(m), wi(m);
    lapack_int selected = 0;
    // Job V so LAPACKE allocates iwork; with N some builds hand dtrsen a null iwork.
    double s = 0.0, sep = 0.0;
    lapack_int info = LAPACKE_dtrsen(LAPACK_COL_MAJOR, 'V', 'V', select.data(), static_cast<lapack_int>(m),
                                     t.data(), static_cast<lapack_int>(m), q.data(), static_cast<lapack_int>(m),
                                     wr.data(), wi.data(), &selected, &s, &sep);
    if (info != 0 || selected != static_cast<lapack_int>(c.size())) {
      result.outcome = SplitOutcome::ambiguous;
      return result;
    }
    combined.middleCols(filled, selected) = q.leftCols(selected);
    filled += selected;
    result.bases.push_back(basis * q.leftCols(selected));
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(combined);
  const auto& sv = svd.singularValues();
  if (sv(sv.size() - 1) < kMinSubspaceSeparation * sv(0)) {
    result.bases.clear();
    result.outcome = SplitOutcome::ambiguous;
    return result;
  }
  result.outcome = SplitOutcome::split;
  return result;
}

// Orthonormal basis for span(u) with each column's largest entry positive.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& u) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(u);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(u.rows(), u.cols());
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    Eigen::Index arg = 0;
    for (Eigen::Index r = 1; r < q.rows(); ++r)
      if (std::abs(q(r, c)) > std::abs(q(arg, c)) + 1e-12) arg = r;
    if (q(arg, c) < 0) q.col(c) *= -1.0;
  }
  return q;
}

double log_abs_det(const Eigen::MatrixXd& b) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
  const Eigen::MatrixXd& f = lu.matrixLU();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < f.rows(); ++i) sum += std::log(std::abs(f(i, i)));
  return sum;
}

double relative_spread(const Eigen::MatrixXd& b, const Roots& roots) {
  if (b.rows() == 1) return 0.0;
  Eigen::EigenSolver<Eigen::MatrixXd> es(b, false);
  const auto ev = es.eigenvalues();
  std::vector<double> moduli;
  snap_moduli(std::vector<std::complex<double>>(ev.data(), ev.data() + ev.size()), roots, moduli);
  const auto [lo, hi] = std::minmax_element(moduli.begin(), moduli.end());
  return *hi > 0 ? (*hi - *lo) / *hi : 0.0;
}

std::vector<Eigen::MatrixXd> float_generators(const GeneratorFamily& family) {
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    Eigen::MatrixXd a = family.matrix(i).to_double();
    if (!a.allFinite()) {
      throw DomainError(Errc::overflow, "generator " + std::to_string(i + 1) + " exceeds double range");
    }
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace

void sort_blocks(std::vector<SpectrumBlock>& blocks) {
  auto key = [](const SpectrumBlock& b) {
    std::vector<long long> k;
    for (double e : b.exponents) k.push_back(std::llround(e * 1e9));
    return k;
  };
  std::stable_sort(blocks.begin(), blocks.end(), [&](const SpectrumBlock& x, const SpectrumBlock& y) {
    const auto kx = key(x), ky = key(y);
    if (kx != ky) return kx > ky;
    return x.dim > y.dim;
  });
}

Spectrum tabulated_spectrum(const std::vector<std::size_t>& dims,
                            const std::vector<std::vector<double>>& exponents) {
  if (dims.size() != exponents.size() || dims.empty()) {
    throw DomainError(Errc::length_mismatch, "need one exponent row per block and at least one block");
  }
  Spectrum s;
  s.generators = exponents.front().size();
  for (std::size_t j = 0; j < dims.size(); ++j) {
    if (exponents[j].size() != s.generators) {
      throw DomainError(Errc::length_mismatch, "block " + std::to_string(j + 1) + " has the wrong exponent count");
    }
    if (dims[j] == 0) throw DomainError(Errc::dim_mismatch, "block dimensions must be positive");
    s.dim += dims[j];
    s.blocks.push_back({dims[j], exponents[j], Eigen::MatrixXd(), std::vector<double>(s.generators, 0.0)});
  }
  sort_blocks(s.blocks);
  return s;
}

Spectrum joint_spectrum(const GeneratorFamily& family, const SpectralTolerances& tol) {
  const std::size_t d = family.dim();
  const auto gens = float_generators(family);
  const auto roots = exact_root_sets(family);

  std::vector<Eigen::MatrixXd> blocks{Eigen::MatrixXd::Identity(d, d)};
  while (true) {
    bool changed = false;
    std::string ambiguity;
    std::vector<Eigen::MatrixXd> next;
    for (const auto& block : blocks) {
      std::vector<Eigen::MatrixXd> pieces{block};
      for (std::size_t i = 0; i < gens.size(); ++i) {
        std::vector<Eigen::MatrixXd> refined;
        for (const auto& piece : pieces) {
          SplitResult r = split_block(piece, gens[i], roots[i], tol.grouping);
          if (r.outcome == SplitOutcome::split) {
            for (auto& b : r.bases) refined.push_back(std::move(b));
          } else {
            if (r.outcome == SplitOutcome::ambiguous && ambiguity.empty()) {
              ambiguity = "generator " + std::to_string(i + 1) + " has moduli {" + format_moduli(r.moduli) +
                          "} on a block of dimension " + std::to_string(piece.cols());
            }
            refined.push_back(piece);
          }
        }
        pieces = std::move(refined);
      }
      if (pieces.size() > 1) changed = true;
      for (auto& p : pieces) next.push_back(std::move(p));
    }
    blocks = std::move(next);
    if (!changed) {
      if (!ambiguity.empty()) throw DomainError(Errc::grouping_ambiguous, ambiguity);
      break;
    }
  }

  Spectrum spectrum;
  spectrum.dim = d;
  spectrum.generators = family.size();
  for (const auto& raw : blocks) {
    SpectrumBlock b;
    b.basis = canonical_basis(raw);
    b.dim = static_cast<std::size_t>(b.basis.cols());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Eigen::MatrixXd restricted = b.basis.transpose() * gens[i] * b.basis;
      b.exponents.push_back(log_abs_det(restricted) / static_cast<double>(b.dim));
      b.modulus_spread.push_back(relative_spread(restricted, roots[i]));
    }
    spectrum.blocks.push_back(std::move(b));
  }
  sort_blocks(spectrum.blocks);
  spectrum.residual = spectrum_residual(family, spectrum);
  if (!(spectrum.residual <= tol.invariance)) {
    std::ostringstream os;
    os << "invariance residual " << spectrum.residual << " exceeds " << tol.invariance;
    throw DomainError(Errc::residual_exceeded, os.str());
  }
  return spectrum;
}

double generator_pesin_entropy(const Spectrum& spectrum, std::size_t generator) {
  if (generator >= spectrum.generators) {
    throw DomainError(Errc::index_out_of_range, "generator " + std::to_string(generator + 1) + " of " +
                                                    std::to_string(spectrum.generators));
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < spectrum.size(); ++j) sum += std::max(spectrum.weighted(j, generator), 0.0);
  return sum;
}

double spectrum_residual(const GeneratorFamily& family, const Spectrum& spectrum) {
  if (family.dim() != spectrum.dim || family.size() != spectrum.generators) {
    throw DomainError(Errc::dim_mismatch, "spectrum does not belong to this family");
  }
  const auto gens = float_generators(family);
  double worst = 0.0;
  for (const auto& block : spectrum.blocks) {
    if (block.basis.rows() != static_cast<Eigen::Index>(family.dim())) {
      throw DomainError(Errc::dim_mismatch, "spectrum block carries no basis in R^d");
    }
    for (const auto& a : gens) {
      const Eigen::MatrixXd image = a * block.basis;
      const Eigen::MatrixXd inside = block.basis.transpose() * image;
      const Eigen::MatrixXd outside = image - block.basis * inside;
      worst = std::max(worst, outside.norm() / inside.norm());
    }
  }
  return worst;
}

}  // namespace zkent
