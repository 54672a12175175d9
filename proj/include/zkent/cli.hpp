#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zkent/family.hpp"
#include "zkent/topo.hpp"

namespace zkent {

inline constexpr const char* kToolName = "zkent";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Malformed input file; the message carries "origin:line: ".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FamilySpec {
  std::size_t dimension = 0;
  ActionKind kind = ActionKind::invertible;
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<BigInt>>> matrices;  // generator -> rows
  std::optional<std::vector<double>> distribution;
  std::optional<PhaseSpace> phase_space;

  // Runs the core validation; throws DomainError.
  GeneratorFamily family() const;
};

// JSON when the first non-blank character is '{', the line format otherwise.
FamilySpec parse_family_text(const std::string& text, const std::string& origin = "<input>");
FamilySpec parse_family_json(const std::string& text, const std::string& origin = "<input>");
FamilySpec parse_family_lines(const std::string& text, const std::string& origin = "<input>");

std::uint64_t fnv1a64(const std::string& bytes);
std::string digest_string(const std::string& bytes);  // "fnv1a64:<16 hex digits>"

// Exit codes: 0 success, 1 domain error or failed verification, 2 I/O or usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zkent
