#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectral_rec {

enum class ErrorKind {
  kMalformedInput,
  kSyntax,
  kPoleEvaluation,
  kUnexpectedPole,
  kLogarithmicTerm,
  kUnsupportedRamification,
  kUnsupportedCurve,
  kMode,
  kDegenerateCurve,
  kInternalConsistency,
  kInsufficientOrder,
  kInvariantViolation,
  kNormalization,
  kBadSample,
  kIncompleteTable,
  kUnsupportedOperation,
  kNotASpectralCurve,
  kConsistency,
  kQuantizationFailure,
  kBadSheet,
};

std::string_view to_string(ErrorKind kind);

/// Every failure in the library is reported through this type; `kind()`
/// lets callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown by truncated series arithmetic when a requested coefficient lies
/// beyond the known precision.
class InsufficientPrecision : public Error {
 public:
  InsufficientPrecision(int tried, const std::string& message)
      : Error(ErrorKind::kInsufficientOrder, message + " (order tried: " + std::to_string(tried) + ")"),
        tried_(tried) {}

  int tried() const noexcept { return tried_; }

 private:
  int tried_;
};

}  // namespace spectral_rec
