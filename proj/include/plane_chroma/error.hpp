#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plane_chroma {

enum class errc {
  invalid_characteristic,
  division_by_zero,
  no_such_polynomial,
  not_a_difference_set,
  degenerate_order,
  construction_failed,
  not_planar,
  unsupported_characteristic,
  domain_mismatch,
  invalid_coloring,
  out_of_hypothesis,
  precondition_failed,
  unsupported,
  extension_unverified,
  domain_error,
  randomized_failure,
  budget_exceeded,
  parse_error,
};

constexpr std::string_view to_string(errc code) noexcept {
  switch (code) {
    case errc::invalid_characteristic: return "InvalidCharacteristic";
    case errc::division_by_zero: return "DivisionByZero";
    case errc::no_such_polynomial: return "NoSuchPolynomial";
    case errc::not_a_difference_set: return "NotADifferenceSet";
    case errc::degenerate_order: return "DegenerateOrder";
    case errc::construction_failed: return "ConstructionFailed";
    case errc::not_planar: return "NotPlanar";
    case errc::unsupported_characteristic: return "UnsupportedCharacteristic";
    case errc::domain_mismatch: return "DomainMismatch";
    case errc::invalid_coloring: return "InvalidColoring";
    case errc::out_of_hypothesis: return "OutOfHypothesis";
    case errc::precondition_failed: return "PreconditionFailed";
    case errc::unsupported: return "Unsupported";
    case errc::extension_unverified: return "ExtensionUnverified";
    case errc::domain_error: return "DomainError";
    case errc::randomized_failure: return "RandomizedFailure";
    case errc::budget_exceeded: return "BudgetExceeded";
    case errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above so
// callers (and the CLI's exit-code mapping) can dispatch without string
// matching.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

class parse_error : public error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : error(errc::parse_error, "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace plane_chroma
