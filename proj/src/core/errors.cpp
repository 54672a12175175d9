#include "zkent/errors.hpp"

namespace zkent {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::empty_family: return "EmptyFamily";
    case Errc::non_square: return "NonSquare";
    case Errc::dim_mismatch: return "DimMismatch";
    case Errc::non_commuting: return "NonCommuting";
    case Errc::singular_generator: return "SingularGenerator";
    case Errc::determinant_not_unit: return "DeterminantNotUnit";
    case Errc::negative_entry: return "NegativeEntry";
    case Errc::sum_not_one: return "SumNotOne";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::grouping_ambiguous: return "GroupingAmbiguous";
    case Errc::residual_exceeded: return "ResidualExceeded";
    case Errc::bad_subset: return "BadSubset";
    case Errc::too_many_blocks: return "TooManyBlocks";
    case Errc::non_positive_constant: return "NonPositiveConstant";
    case Errc::zero_degree: return "ZeroDegree";
    case Errc::bad_branch_count: return "BadBranchCount";
    case Errc::enumeration_too_large: return "EnumerationTooLarge";
    case Errc::bad_sample_count: return "BadSampleCount";
    case Errc::overflow: return "Overflow";
    case Errc::bad_epsilon: return "BadEpsilon";
  }
  return "Unknown";
}

DomainError::DomainError(Errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

}  // namespace zkent
