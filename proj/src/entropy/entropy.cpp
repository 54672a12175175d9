#include "zkent/entropy.hpp"

#include <algorithm>
#include <cmath>

#include "zkent/simplex_lp.hpp"

namespace zkent {

namespace {

void check_length(const Spectrum& spectrum, const Distribution& nu) {
  if (nu.size() != spectrum.generators) {
    throw DomainError(Errc::length_mismatch, "distribution has " + std::to_string(nu.size()) +
                                                 " entries, spectrum has " +
                                                 std::to_string(spectrum.generators) + " generators");
  }
}

// Clamps round-off from the LP and restores an exact probability vector.
Distribution clean_distribution(const Eigen::VectorXd& raw) {
  std::vector<double> p(raw.size());
  double sum = 0.0;
  for (Eigen::Index i = 0; i < raw.size(); ++i) {
    p[i] = std::max(raw(i), 0.0);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  const std::size_t k = p.size();
  return Distribution::validate(std::move(p), k);
}

}  // namespace

double block_term(const Spectrum& spectrum, const Distribution& nu, std::size_t block) {
  double term = 0.0;
  for (std::size_t i = 0; i < spectrum.generators; ++i) term += nu[i] * spectrum.weighted(block, i);
  return term;
}

EntropyReport random_entropy(const Spectrum& spectrum, const Distribution& nu) {
  check_length(spectrum, nu);
  EntropyReport report;
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const double term = block_term(spectrum, nu, j);
    report.block_terms.push_back(term);
    if (term > 0.0) {
      report.best_subset.push_back(j);
      report.value += term;
    }
  }
  report.mixture_bound = generator_mixture_bound(spectrum, nu);
  return report;
}

double generator_mixture_bound(const Spectrum& spectrum, const Distribution& nu) {
  check_length(spectrum, nu);
  double bound = 0.0;
  for (std::size_t i = 0; i < spectrum.generators; ++i) bound += nu[i] * generator_pesin_entropy(spectrum, i);
  return bound;
}

bool mixture_bound_is_tight(const Spectrum& spectrum) {
  for (const auto& block : spectrum.blocks) {
    const bool pos = std::any_of(block.exponents.begin(), block.exponents.end(), [](double e) { return e > 0; });
    const bool neg = std::any_of(block.exponents.begin(), block.exponents.end(), [](double e) { return e < 0; });
    if (pos && neg) return false;
  }
  return true;
}

ExtremalResult extremal_distribution(const Spectrum& spectrum, Sense sense) {
  const std::size_t k = spectrum.generators;
  if (sense == Sense::maximize) {
    std::size_t best = 0;
    double best_value = generator_pesin_entropy(spectrum, 0);
    for (std::size_t i = 1; i < k; ++i) {
      const double v = generator_pesin_entropy(spectrum, i);
      if (v > best_value) {
        best = i;
        best_value = v;
      }
    }
    Distribution nu = Distribution::vertex(k, best);
    return {nu, random_entropy(spectrum, nu).value};
  }

  // Variables (nu_1..nu_k, u_1..u_s, slack_1..slack_s):
  //   sum_i nu_i d_j lambda_{i,j} - u_j + slack_j = 0,   sum_i nu_i = 1.
  const std::size_t s = spectrum.size();
  const auto n = static_cast<Eigen::Index>(k + 2 * s);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(s + 1), n);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s + 1));
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t i = 0; i < k; ++i) a(j, i) = spectrum.weighted(j, i);
    a(j, k + j) = -1.0;
    a(j, k + s + j) = 1.0;
    c(k + j) = 1.0;
  }
  a.row(s).head(k).setOnes();
  b(s) = 1.0;
  const LpSolution lp = solve_lp(a, b, c);
  // The feasible set is a nonempty polytope and the objective is bounded below by 0.
  Distribution nu = clean_distribution(lp.x.head(k));
  return {nu, random_entropy(spectrum, nu).value};
}

}  // namespace zkent
