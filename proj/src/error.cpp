#include "ohs/error.hpp"

namespace ohs {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "invalid-input";
    case ErrorCode::EvaluationOverflow: return "evaluation-overflow";
    case ErrorCode::NumericalFailure: return "numerical-failure";
    case ErrorCode::PositivityViolation: return "positivity-violation";
    case ErrorCode::SupportOutsideDomain: return "support-outside-domain";
    case ErrorCode::NonpositiveMass: return "nonpositive-mass";
    case ErrorCode::DegenerateState: return "degenerate-state";
    case ErrorCode::InsufficientRecords: return "insufficient-records";
    case ErrorCode::UnknownTime: return "unknown-time";
    case ErrorCode::WindowEmpty: return "window-empty";
  }
  return "unknown-error";
}

}  // namespace ohs
