#ifndef DRLSOFT_ERROR_HPP
#define DRLSOFT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace drlsoft {

enum class ErrorCode {
  NotAPartialOrder,
  NotALattice,
  NotBounded,
  NotDistributive,
  ResiduationFails,
  NotACIS,
  MalformedTables,
  BadParams,
  SizeOverflow,
  OutOfRange,
  ScopeError,
  ScopeMissing,
  VariableNotInScope,
  ValueOutOfRange,
  BadK,
  EmptyInput,
  TooLarge,
  ShapeMismatch,
  NotEnoughScopes,
  ParseError,
  AxiomViolation,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NotBounded: return "NotBounded";
    case ErrorCode::NotDistributive: return "NotDistributive";
    case ErrorCode::ResiduationFails: return "ResiduationFails";
    case ErrorCode::NotACIS: return "NotACIS";
    case ErrorCode::MalformedTables: return "MalformedTables";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::SizeOverflow: return "SizeOverflow";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ScopeError: return "ScopeError";
    case ErrorCode::ScopeMissing: return "ScopeMissing";
    case ErrorCode::VariableNotInScope: return "VariableNotInScope";
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotEnoughScopes: return "NotEnoughScopes";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
  }
  return "Unknown";
}

// Every failure raised by the library. `witness` carries the offending
// element ids (pair, triple, variable/value) when the failure has one.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::vector<std::size_t> witness = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        witness_(std::move(witness)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorCode code_;
  std::vector<std::size_t> witness_;
};

}  // namespace drlsoft

#endif  // DRLSOFT_ERROR_HPP
