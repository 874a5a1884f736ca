#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace freecore {

enum class ErrorKind {
  NonPositiveRatio,
  PrimeTooLarge,
  ParseError,
  ValidationFailed,
  Dim22Rejected,
  UnsupportedStructure,
  NotScalarSummand,
  TrivialGamma,
  RatioOutsideGroup,
  SubgroupNotContained,
  DisconnectedIndex,
  InvalidScenario,
  HypothesesNotRecognized,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonPositiveRatio: return "NonPositiveRatio";
    case ErrorKind::PrimeTooLarge: return "PrimeTooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
    case ErrorKind::Dim22Rejected: return "Dim22Rejected";
    case ErrorKind::UnsupportedStructure: return "UnsupportedStructure";
    case ErrorKind::NotScalarSummand: return "NotScalarSummand";
    case ErrorKind::TrivialGamma: return "TrivialGamma";
    case ErrorKind::RatioOutsideGroup: return "RatioOutsideGroup";
    case ErrorKind::SubgroupNotContained: return "SubgroupNotContained";
    case ErrorKind::DisconnectedIndex: return "DisconnectedIndex";
    case ErrorKind::InvalidScenario: return "InvalidScenario";
    case ErrorKind::HypothesesNotRecognized: return "HypothesesNotRecognized";
  }
  return "Unknown";
}

// Every engine failure carries a kind (for exit-code mapping) and the rule it
// broke, phrased as the mathematical statement being enforced.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace freecore
