#include "levelgraph/errors.hpp"

namespace lg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorKind::IndeterminateSign: return "IndeterminateSign";
    case ErrorKind::DenominatorIdenticallyZero: return "DenominatorIdenticallyZero";
    case ErrorKind::CriticalPointInRHP: return "CriticalPointInRHP";
    case ErrorKind::DegenerateLine: return "DegenerateLine";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::InvalidBoundaryData: return "InvalidBoundaryData";
    case ErrorKind::SeedNotOnCurve: return "SeedNotOnCurve";
    case ErrorKind::CorrectorDiverged: return "CorrectorDiverged";
    case ErrorKind::Diverged: return "Diverged";
    case ErrorKind::NonIntegrableEndpoint: return "NonIntegrableEndpoint";
    case ErrorKind::ZeroTotalCharge: return "ZeroTotalCharge";
    case ErrorKind::LiftInconsistency: return "LiftInconsistency";
    case ErrorKind::CrossCheckFailure: return "CrossCheckFailure";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace lg
