#pragma once

#include <stdexcept>
#include <string>

namespace lg {

enum class ErrorKind {
  ZeroPolynomial,
  IndeterminateSign,
  DenominatorIdenticallyZero,
  CriticalPointInRHP,
  DegenerateLine,
  LevelMismatch,
  InvalidBoundaryData,
  SeedNotOnCurve,
  CorrectorDiverged,
  Diverged,
  NonIntegrableEndpoint,
  ZeroTotalCharge,
  LiftInconsistency,
  CrossCheckFailure,
  InvalidInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lg
