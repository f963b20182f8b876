#include "spectral_rec/error.hpp"

namespace spectral_rec {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedInput: return "malformed-input";
    case ErrorKind::kSyntax: return "syntax-error";
    case ErrorKind::kPoleEvaluation: return "pole-evaluation";
    case ErrorKind::kUnexpectedPole: return "unexpected-pole";
    case ErrorKind::kLogarithmicTerm: return "logarithmic-term";
    case ErrorKind::kUnsupportedRamification: return "unsupported-ramification";
    case ErrorKind::kUnsupportedCurve: return "unsupported-curve";
    case ErrorKind::kMode: return "mode-error";
    case ErrorKind::kDegenerateCurve: return "degenerate-curve";
    case ErrorKind::kInternalConsistency: return "internal-consistency";
    case ErrorKind::kInsufficientOrder: return "insufficient-order";
    case ErrorKind::kInvariantViolation: return "invariant-violation";
    case ErrorKind::kNormalization: return "normalization";
    case ErrorKind::kBadSample: return "bad-sample";
    case ErrorKind::kIncompleteTable: return "incomplete-table";
    case ErrorKind::kUnsupportedOperation: return "unsupported-operation";
    case ErrorKind::kNotASpectralCurve: return "not-a-spectral-curve";
    case ErrorKind::kConsistency: return "consistency";
    case ErrorKind::kQuantizationFailure: return "quantization-failure";
    case ErrorKind::kBadSheet: return "bad-sheet";
  }
  return "unknown";
}

}  // namespace spectral_rec
