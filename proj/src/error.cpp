#include "sombrero/error.hpp"

namespace sombrero {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CancellationExceeded: return "CancellationExceeded";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::RecurrenceUnstable: return "RecurrenceUnstable";
    case ErrorKind::InvalidPhysicalParams: return "InvalidPhysicalParams";
    case ErrorKind::EvaluatorFailure: return "EvaluatorFailure";
    case ErrorKind::ScanExhausted: return "ScanExhausted";
    case ErrorKind::ContinuationBroken: return "ContinuationBroken";
    case ErrorKind::MissingCurves: return "MissingCurves";
    case ErrorKind::NoCapture: return "NoCapture";
    case ErrorKind::InsufficientRange: return "InsufficientRange";
    case ErrorKind::NotAnEigenvalue: return "NotAnEigenvalue";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::GridInvalid: return "GridInvalid";
  }
  return "Unknown";
}

}  // namespace sombrero
