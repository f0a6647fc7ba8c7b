#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delaystab {

enum class ErrorCode {
  // input errors
  LeadingZero,
  DegreeExcess,
  BadMultiples,
  BadScalar,
  DimensionMismatch,
  BranchCut,
  NotNeutral,
  FractionalUnsupported,
  DeltaTooSmall,
  BadRequest,
  ParseError,
  // numerical failures
  SingularPoint,
  ZeroPolynomial,
  DegenerateSum,
  DegenerateAtOmega,
  StationaryPoint,
  NegativeCount,
  NeutralAxisInRHP,
  StepCollapse,
  LostRoot,
  UnstableApprox,
  PoleOnAxis,
};

std::string_view error_name(ErrorCode code) noexcept;

/// True for errors caused by bad user input (CLI exit code 1); false for
/// numerical failures (exit code 2).
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace delaystab
