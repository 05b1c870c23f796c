#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sombrero {

enum class ErrorKind {
  InvalidArgument,
  CancellationExceeded,
  NoConvergence,
  QuadratureFailure,
  RecurrenceUnstable,
  InvalidPhysicalParams,
  EvaluatorFailure,
  ScanExhausted,
  ContinuationBroken,
  MissingCurves,
  NoCapture,
  InsufficientRange,
  NotAnEigenvalue,
  GridTooCoarse,
  GridInvalid,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for every numerical failure; callers branch on kind().
class SolverError : public std::runtime_error {
 public:
  SolverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sombrero
