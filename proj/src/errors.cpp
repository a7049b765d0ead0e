#include "discflow/errors.hpp"

namespace discflow {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::GridMismatch: return "grid-mismatch";
    case ErrorKind::Inconsistency: return "inconsistency";
    case ErrorKind::InvalidRegime: return "invalid-regime";
    case ErrorKind::Nonconvergence: return "nonconvergence";
    case ErrorKind::Dependency: return "dependency";
    case ErrorKind::Compatibility: return "compatibility";
    case ErrorKind::TailIntegration: return "tail-integration";
    case ErrorKind::CorrectorInfeasible: return "corrector-infeasible";
    case ErrorKind::IllConditioned: return "ill-conditioned";
    case ErrorKind::Precondition: return "precondition";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& what, double measured)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
      kind_(kind),
      measured_(measured) {}

}  // namespace discflow
