#include "delaystab/error.hpp"

namespace delaystab {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LeadingZero: return "LeadingZero";
    case ErrorCode::DegreeExcess: return "DegreeExcess";
    case ErrorCode::BadMultiples: return "BadMultiples";
    case ErrorCode::BadScalar: return "BadScalar";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BranchCut: return "BranchCut";
    case ErrorCode::NotNeutral: return "NotNeutral";
    case ErrorCode::FractionalUnsupported: return "FractionalUnsupported";
    case ErrorCode::DeltaTooSmall: return "DeltaTooSmall";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DegenerateSum: return "DegenerateSum";
    case ErrorCode::DegenerateAtOmega: return "DegenerateAtOmega";
    case ErrorCode::StationaryPoint: return "StationaryPoint";
    case ErrorCode::NegativeCount: return "NegativeCount";
    case ErrorCode::NeutralAxisInRHP: return "NeutralAxisInRHP";
    case ErrorCode::StepCollapse: return "StepCollapse";
    case ErrorCode::LostRoot: return "LostRoot";
    case ErrorCode::UnstableApprox: return "UnstableApprox";
    case ErrorCode::PoleOnAxis: return "PoleOnAxis";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LeadingZero:
    case ErrorCode::DegreeExcess:
    case ErrorCode::BadMultiples:
    case ErrorCode::BadScalar:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::BranchCut:
    case ErrorCode::NotNeutral:
    case ErrorCode::FractionalUnsupported:
    case ErrorCode::DeltaTooSmall:
    case ErrorCode::BadRequest:
    case ErrorCode::ParseError:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

}  // namespace delaystab
