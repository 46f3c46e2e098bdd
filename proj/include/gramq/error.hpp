#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gramq {

enum class ErrorKind {
  NotHermitian,
  NotPositive,
  NoConvergence,
  SupportViolation,
  InvalidParameter,
  DimensionMismatch,
  LengthMismatch,
  NotUnitary,
  DegenerateEnsemble,
  UnknownName,
  ParameterOutOfRange,
  ParseError,
  InvariantViolation,
  DimensionTooLarge,
};

inline std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NotUnitary: return "NotUnitary";
    case ErrorKind::DegenerateEnsemble: return "DegenerateEnsemble";
    case ErrorKind::UnknownName: return "UnknownName";
    case ErrorKind::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::DimensionTooLarge: return "DimensionTooLarge";
  }
  return "Unknown";
}

}  // namespace gramq
