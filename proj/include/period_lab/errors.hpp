#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace period_lab {

enum class ErrorCode {
  NonConvergence,
  ZeroPolynomial,
  EvaluationFailure,
  DegenerateStep,
  AmbiguousClustering,
  DegenerateHessian,
  OffCurve,
  SingularMatrix,
  SingularPoint,
  NonFinitelyMany,
  InconsistentElimination,
  ZeroParameters,
  StabilizedCurve,
  ContinuationFailure,
  ChartBreakdown,
  UnknownName,
  IndefiniteEnumeration,
  OddSum,
  NotContained,
  NonPositive,
  SingularCurve,
  ConventionMismatch,
  IdenticallyDegenerate,
  DegenerateSextic,
  UnknownExperiment,
  InvalidConfig,
  IoFailure,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::EvaluationFailure: return "EvaluationFailure";
    case ErrorCode::DegenerateStep: return "DegenerateStep";
    case ErrorCode::AmbiguousClustering: return "AmbiguousClustering";
    case ErrorCode::DegenerateHessian: return "DegenerateHessian";
    case ErrorCode::OffCurve: return "OffCurve";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NonFinitelyMany: return "NonFinitelyMany";
    case ErrorCode::InconsistentElimination: return "InconsistentElimination";
    case ErrorCode::ZeroParameters: return "ZeroParameters";
    case ErrorCode::StabilizedCurve: return "StabilizedCurve";
    case ErrorCode::ContinuationFailure: return "ContinuationFailure";
    case ErrorCode::ChartBreakdown: return "ChartBreakdown";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::IndefiniteEnumeration: return "IndefiniteEnumeration";
    case ErrorCode::OddSum: return "OddSum";
    case ErrorCode::NotContained: return "NotContained";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::ConventionMismatch: return "ConventionMismatch";
    case ErrorCode::IdenticallyDegenerate: return "IdenticallyDegenerate";
    case ErrorCode::DegenerateSextic: return "DegenerateSextic";
    case ErrorCode::UnknownExperiment: return "UnknownExperiment";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class LabError : public std::runtime_error {
 public:
  LabError(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& detail) {
  throw LabError(code, detail);
}

}  // namespace period_lab
