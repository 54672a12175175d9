#include "zkent/family.hpp"

#include <cmath>
#include <sstream>

namespace zkent {

std::string_view to_string(ActionKind kind) {
  return kind == ActionKind::invertible ? "invertible" : "endomorphism";
}

namespace {

std::string commutator_message(std::size_t first, std::size_t second, const IntMatrix& difference,
                               std::string a, std::string b) {
  if (a.empty()) a = "A" + std::to_string(first + 1);
  if (b.empty()) b = "A" + std::to_string(second + 1);
  return "generators " + std::to_string(first + 1) + " (" + a + ") and " + std::to_string(second + 1) + " (" + b +
         ") do not commute; " + a + "*" + b + " - " + b + "*" + a + " = " + difference.to_string();
}

}  // namespace

NonCommutingError::NonCommutingError(std::size_t first, std::size_t second, IntMatrix difference,
                                     const std::string& first_name, const std::string& second_name)
    : DomainError(Errc::non_commuting, commutator_message(first, second, difference, first_name, second_name)),
      first_(first),
      second_(second),
      difference_(std::move(difference)) {}

GeneratorFamily GeneratorFamily::validate(std::vector<Generator> generators, ActionKind kind) {
  if (generators.empty()) throw DomainError(Errc::empty_family, "a family needs at least one generator");
  GeneratorFamily family;
  family.kind_ = kind;
  family.dim_ = generators.front().matrix.dim();
  if (family.dim_ == 0) throw DomainError(Errc::non_square, "generator 1 is empty");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].matrix.dim() != family.dim_) {
      std::ostringstream os;
      os << "generator " << i + 1 << " is " << generators[i].matrix.dim() << "x"
         << generators[i].matrix.dim() << ", expected " << family.dim_ << "x" << family.dim_;
      throw DomainError(Errc::dim_mismatch, os.str());
    }
    if (generators[i].name.empty()) generators[i].name = "A" + std::to_string(i + 1);
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    BigInt det = generators[i].matrix.determinant();
    if (det == 0) {
      throw DomainError(Errc::singular_generator,
                        "generator " + std::to_string(i + 1) + " (" + generators[i].name + ") is singular");
    }
    if (kind == ActionKind::invertible && det != 1 && det != -1) {
      std::ostringstream os;
      os << "generator " << i + 1 << " (" << generators[i].name << ") has determinant " << det
         << "; an invertible action needs |det| = 1";
      throw DomainError(Errc::determinant_not_unit, os.str());
    }
    family.determinants_.push_back(std::move(det));
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      IntMatrix diff = generators[i].matrix * generators[j].matrix - generators[j].matrix * generators[i].matrix;
      if (diff != IntMatrix(family.dim_)) throw NonCommutingError(i, j, std::move(diff), generators[i].name, generators[j].name);
    }
  }
  family.generators_ = std::move(generators);
  return family;
}

GeneratorFamily GeneratorFamily::validate(const std::vector<IntMatrix>& matrices, ActionKind kind) {
  std::vector<Generator> gens;
  gens.reserve(matrices.size());
  for (std::size_t i = 0; i < matrices.size(); ++i) gens.push_back({"A" + std::to_string(i + 1), matrices[i]});
  return validate(std::move(gens), kind);
}

Distribution Distribution::validate(std::vector<double> probs, std::size_t k) {
  if (probs.size() != k) {
    throw DomainError(Errc::length_mismatch, "distribution has " + std::to_string(probs.size()) +
                                                 " entries for " + std::to_string(k) + " generators");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (!(probs[i] >= 0.0) || !std::isfinite(probs[i])) {
      std::ostringstream os;
      os << "entry " << i + 1 << " is " << probs[i];
      throw DomainError(Errc::negative_entry, os.str());
    }
    sum += probs[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "entries sum to " << sum << ", not 1 within " << kSumTolerance;
    throw DomainError(Errc::sum_not_one, os.str());
  }
  return Distribution(std::move(probs));
}

Distribution Distribution::uniform(std::size_t k) {
  return Distribution(std::vector<double>(k, 1.0 / static_cast<double>(k)));
}

Distribution Distribution::vertex(std::size_t k, std::size_t i) {
  std::vector<double> p(k, 0.0);
  p.at(i) = 1.0;
  return Distribution(std::move(p));
}

IntMatrix word_product(const GeneratorFamily& family, const Word& word) {
  IntMatrix product = IntMatrix::identity(family.dim());
  for (std::size_t letter : word.letters) {
    if (letter >= family.size()) {
      throw DomainError(Errc::index_out_of_range, "word letter " + std::to_string(letter + 1) +
                                                      " exceeds generator count " + std::to_string(family.size()));
    }
    product = family.matrix(letter) * product;
  }
  return product;
}

}  // namespace zkent
