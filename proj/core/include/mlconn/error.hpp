#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mlconn {

enum class ErrorKind {
  kIndexOutOfRange,
  kInvalidWeight,
  kInvalidGraph,
  kEmptyPattern,
  kInvalidArgument,
  kConvergenceFailure,
  kDegenerateCase,
  kNotRegular,
  kTooManyPairs,
  kInfeasiblePattern,
  kUnconverged,
  kNoCoalescence,
  kClusterTooLarge,
  kDualityGapTooLarge,
  kZeroLambda,
  kExhaustedPairs,
  kSizeMismatch,
  kDegenerateTrajectory,
  kParseError,
  kValidationError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for every module; the kind decides how callers
// (the CLI in particular) react.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason)
      : Error(ErrorKind::kParseError,
              "line " + std::to_string(line) + ": " + reason),
        line_(line),
        reason_(reason) {}

  int line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  int line_;
  std::string reason_;
};

}  // namespace mlconn
