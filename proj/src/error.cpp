#include "weakinfo/error.hpp"

namespace weakinfo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSpace: return "InvalidSpace";
    case ErrorCode::kInvalidMeasure: return "InvalidMeasure";
    case ErrorCode::kEquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::kSpaceMismatch: return "SpaceMismatch";
    case ErrorCode::kDegenerateConditioning: return "DegenerateConditioning";
    case ErrorCode::kInvalidModel: return "InvalidModel";
    case ErrorCode::kNoArbitrageViolation: return "NoArbitrageViolation";
    case ErrorCode::kInvalidNumeraire: return "InvalidNumeraire";
    case ErrorCode::kInvalidUtility: return "InvalidUtility";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kSolverFailure: return "SolverFailure";
    case ErrorCode::kLawMismatch: return "LawMismatch";
    case ErrorCode::kCompletenessRequired: return "CompletenessRequired";
    case ErrorCode::kMartingalePropertyViolation:
      return "MartingalePropertyViolation";
    case ErrorCode::kInconclusiveBasis: return "InconclusiveBasis";
    case ErrorCode::kValidation: return "ValidationError";
  }
  return "UnknownError";
}

}  // namespace weakinfo
