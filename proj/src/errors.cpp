#include "cpbom/errors.hpp"

namespace cpbom {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::XzpExceedsGap: return "XzpExceedsGap";
    case ErrorCode::NegativeJosephsonEnergy: return "NegativeJosephsonEnergy";
    case ErrorCode::InfeasibleCharging: return "InfeasibleCharging";
    case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::DegenerateBand: return "DegenerateBand";
    case ErrorCode::DerivativeUnresolved: return "DerivativeUnresolved";
    case ErrorCode::NonAnalyticPoint: return "NonAnalyticPoint";
    case ErrorCode::SingularNetwork: return "SingularNetwork";
    case ErrorCode::SeriesDivergence: return "SeriesDivergence";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::DimensionCap: return "DimensionCap";
    case ErrorCode::LabelingAmbiguous: return "LabelingAmbiguous";
    case ErrorCode::NotInPureCkRegime: return "NotInPureCkRegime";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::OracleBudgetExceeded: return "OracleBudgetExceeded";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace cpbom
