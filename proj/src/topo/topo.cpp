#include "zkent/topo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zkent/entropy.hpp"

namespace zkent {

namespace {

template <typename T>
void check_length(std::span<const T> values, const Distribution& nu, const char* what) {
  if (values.size() != nu.size()) {
    throw DomainError(Errc::length_mismatch, std::string(what) + " has " + std::to_string(values.size()) +
                                                 " entries for " + std::to_string(nu.size()) + " generators");
  }
}

double weighted_log_plus(std::span<const double> constants, const Distribution& nu, const char* what) {
  check_length(constants, nu, what);
  double sum = 0.0;
  for (std::size_t i = 0; i < constants.size(); ++i) {
    if (!(constants[i] > 0.0)) {
      std::ostringstream os;
      os << what << " " << i + 1 << " is " << constants[i] << ", must be positive";
      throw DomainError(Errc::non_positive_constant, os.str());
    }
    sum += nu[i] * std::log(std::max(1.0, constants[i]));
  }
  return sum;
}

}  // namespace

std::string_view phase_space_name(const PhaseSpace& space) {
  struct Visitor {
    std::string_view operator()(const TorusSpace&) const { return "torus"; }
    std::string_view operator()(const CircleExpandingSpace&) const { return "circle_expanding"; }
    std::string_view operator()(const IntervalSpace&) const { return "interval"; }
    std::string_view operator()(const GraphSpace&) const { return "graph"; }
  };
  return std::visit(Visitor{}, space);
}

double lipschitz_bound(std::span<const double> lipschitz, double ball_dim, const Distribution& nu) {
  if (!(ball_dim >= 0.0)) throw DomainError(Errc::non_positive_constant, "ball dimension must be non-negative");
  return ball_dim * weighted_log_plus(lipschitz, nu, "Lipschitz constant");
}

double smooth_bound(std::span<const double> opnorms, std::size_t manifold_dim, const Distribution& nu) {
  return static_cast<double>(manifold_dim) * weighted_log_plus(opnorms, nu, "derivative norm");
}

double expanding_entropy(std::span<const BigInt> degrees, const Distribution& nu, DegreeRule rule) {
  check_length(degrees, nu, "degree list");
  const BigInt floor = rule == DegreeRule::expanding ? 2 : 1;
  double sum = 0.0;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (boost::multiprecision::abs(degrees[i]) < floor) {
      std::ostringstream os;
      os << "degree " << i + 1 << " is " << degrees[i] << "; "
         << (rule == DegreeRule::expanding ? "expanding maps need |deg| >= 2" : "monotone circle maps need |deg| >= 1");
      throw DomainError(Errc::zero_degree, os.str());
    }
    sum += nu[i] * log_abs(degrees[i]);
  }
  return sum;
}

double interval_bound(std::span<const long long> branches, const Distribution& nu) {
  check_length(branches, nu, "branch list");
  double sum = 0.0;
  for (std::size_t i = 0; i < branches.size(); ++i) {
    if (branches[i] < 1) {
      throw DomainError(Errc::bad_branch_count, "map " + std::to_string(i + 1) + " has " +
                                                    std::to_string(branches[i]) + " monotone pieces");
    }
    sum += nu[i] * std::log(static_cast<double>(branches[i]));
  }
  return sum;
}

FamilyConstants family_constants(const GeneratorFamily& family) {
  FamilyConstants out;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const ScaledMatrix scaled = family.matrix(i).to_scaled();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled.mantissa);
    out.opnorms.push_back(std::ldexp(svd.singularValues()(0), static_cast<int>(scaled.exponent)));
    out.degrees.push_back(family.determinant(i));
  }
  return out;
}

TopoBoundsReport topo_bounds(const GeneratorFamily& family, const Spectrum& spectrum, const Distribution& nu,
                             const BoundsOptions& options) {
  TopoBoundsReport report;
  report.lower = random_entropy(spectrum, nu).value;
  report.rules.emplace_back("lower", "measure-theoretic entropy of Lebesgue measure (variational principle)");

  const FamilyConstants constants = family_constants(family);
  const double ball_dim = options.ball_dim.value_or(static_cast<double>(family.dim()));
  report.lipschitz_upper = lipschitz_bound(constants.opnorms, ball_dim, nu);
  report.rules.emplace_back("lipschitz_upper", "Lipschitz bound with L_i = largest singular value of A_i");
  report.smooth_upper = smooth_bound(constants.opnorms, family.dim(), nu);
  report.rules.emplace_back("smooth_upper", "C^1 bound with sup |Df_i| = largest singular value of A_i");

  if (const auto* circle = std::get_if<CircleExpandingSpace>(&options.phase_space)) {
    report.degree_value = expanding_entropy(circle->degrees, nu, DegreeRule::expanding);
    report.rules.emplace_back("degree_value", "expanding degree formula (declared degrees)");
  } else {
    bool expanding = true;
    for (const auto& block : spectrum.blocks)
      for (double e : block.exponents) expanding = expanding && e > 0.0;
    if (expanding) {
      report.degree_value = expanding_entropy(constants.degrees, nu, DegreeRule::expanding);
      report.rules.emplace_back("degree_value", "expanding degree formula (deg f_i = det A_i)");
    } else if (family.dim() == 1) {
      report.degree_value = expanding_entropy(constants.degrees, nu, DegreeRule::circle_monotone);
      report.rules.emplace_back("degree_value", "monotone circle map formula (deg f_i = A_i)");
    }
  }
  if (const auto* interval = std::get_if<IntervalSpace>(&options.phase_space)) {
    report.interval_upper = interval_bound(interval->branches, nu);
    report.rules.emplace_back("interval_upper", "piecewise monotone interval bound");
  }
  if (std::holds_alternative<GraphSpace>(options.phase_space)) {
    if (family.kind() == ActionKind::invertible) {
      report.graph_value = graph_homeomorphism_entropy();
      report.rules.emplace_back("graph_value", "finite graph homeomorphisms have zero entropy");
    } else {
      report.rules.emplace_back("graph_value", "not applied: generators are not homeomorphisms");
    }
  }
  return report;
}

}  // namespace zkent
