#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cpbom {

enum class ErrorCode {
  NonPositiveParameter,
  XzpExceedsGap,
  NegativeJosephsonEnergy,
  InfeasibleCharging,
  TruncationTooSmall,
  ConvergenceFailure,
  DegenerateBand,
  DerivativeUnresolved,
  NonAnalyticPoint,
  SingularNetwork,
  SeriesDivergence,
  DegeneratePoint,
  DimensionCap,
  LabelingAmbiguous,
  NotInPureCkRegime,
  ConfigInvalid,
  OracleBudgetExceeded,
  IoFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code identifies the failure class.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cpbom
