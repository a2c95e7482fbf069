#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dsbranch {

// Every failure the library reports. The numeric value is the stable code
// surfaced by the CLI in its stderr JSON, so never renumber existing kinds.
enum class ErrorKind {
  ParseError = 10,
  DimensionMismatch = 11,
  NonPositiveDefiniteGram = 20,
  RootSetNotSymmetric = 21,
  ReflectionAxiomViolation = 22,
  InvalidCompactPositive = 23,
  SingularLambda = 30,
  GroupNotClosedWithinBound = 31,
  NotRegular = 32,
  NotInLambdaRho = 33,
  NotDominant = 34,
  NotIntegral = 35,
  GradingMismatch = 40,
  SingularPairing = 41,
  MissingGrading = 42,
  GeneratorsNotPolarized = 50,
  CutoffTooSmall = 60,
  CatalogCorrupt = 70,
  UnknownGroup = 71,
};

inline std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPositiveDefiniteGram: return "NonPositiveDefiniteGram";
    case ErrorKind::RootSetNotSymmetric: return "RootSetNotSymmetric";
    case ErrorKind::ReflectionAxiomViolation: return "ReflectionAxiomViolation";
    case ErrorKind::InvalidCompactPositive: return "InvalidCompactPositive";
    case ErrorKind::SingularLambda: return "SingularLambda";
    case ErrorKind::GroupNotClosedWithinBound: return "GroupNotClosedWithinBound";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NotInLambdaRho: return "NotInLambdaRho";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::NotIntegral: return "NotIntegral";
    case ErrorKind::GradingMismatch: return "GradingMismatch";
    case ErrorKind::SingularPairing: return "SingularPairing";
    case ErrorKind::MissingGrading: return "MissingGrading";
    case ErrorKind::GeneratorsNotPolarized: return "GeneratorsNotPolarized";
    case ErrorKind::CutoffTooSmall: return "CutoffTooSmall";
    case ErrorKind::CatalogCorrupt: return "CatalogCorrupt";
    case ErrorKind::UnknownGroup: return "UnknownGroup";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(error_name(kind)) + ": " + detail),
        kind_(kind),
        detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  int code() const noexcept { return static_cast<int>(kind_); }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace dsbranch
