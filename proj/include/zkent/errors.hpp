#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zkent {

// Domain failures. The CLI maps every DomainError to exit code 1.
enum class Errc {
  empty_family,
  non_square,
  dim_mismatch,
  non_commuting,
  singular_generator,
  determinant_not_unit,
  negative_entry,
  sum_not_one,
  length_mismatch,
  index_out_of_range,
  grouping_ambiguous,
  residual_exceeded,
  bad_subset,
  too_many_blocks,
  non_positive_constant,
  zero_degree,
  bad_branch_count,
  enumeration_too_large,
  bad_sample_count,
  overflow,
  bad_epsilon,
};

/// CamelCase name used in diagnostics, e.g. "NonCommuting".
std::string_view errc_name(Errc code);

class DomainError : public std::runtime_error {
 public:
  DomainError(Errc code, const std::string& message);
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace zkent
