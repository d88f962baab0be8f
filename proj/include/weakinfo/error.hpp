#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace weakinfo {

enum class ErrorCode {
  kInvalidSpace,
  kInvalidMeasure,
  kEquivalenceViolation,
  kSpaceMismatch,
  kDegenerateConditioning,
  kInvalidModel,
  kNoArbitrageViolation,
  kInvalidNumeraire,
  kInvalidUtility,
  kDomainError,
  kSolverFailure,
  kLawMismatch,
  kCompletenessRequired,
  kMartingalePropertyViolation,
  kInconclusiveBasis,
  kValidation,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it to an exit status.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace weakinfo
