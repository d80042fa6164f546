#include "mlconn/error.hpp"

namespace mlconn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kInvalidWeight: return "InvalidWeight";
    case ErrorKind::kInvalidGraph: return "InvalidGraph";
    case ErrorKind::kEmptyPattern: return "EmptyPattern";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::kDegenerateCase: return "DegenerateCase";
    case ErrorKind::kNotRegular: return "NotRegular";
    case ErrorKind::kTooManyPairs: return "TooManyPairs";
    case ErrorKind::kInfeasiblePattern: return "InfeasiblePattern";
    case ErrorKind::kUnconverged: return "Unconverged";
    case ErrorKind::kNoCoalescence: return "NoCoalescence";
    case ErrorKind::kClusterTooLarge: return "ClusterTooLarge";
    case ErrorKind::kDualityGapTooLarge: return "DualityGapTooLarge";
    case ErrorKind::kZeroLambda: return "ZeroLambda";
    case ErrorKind::kExhaustedPairs: return "ExhaustedPairs";
    case ErrorKind::kSizeMismatch: return "SizeMismatch";
    case ErrorKind::kDegenerateTrajectory: return "DegenerateTrajectory";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace mlconn
