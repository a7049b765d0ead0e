#pragma once

#include <stdexcept>
#include <string>

namespace discflow {

enum class ErrorKind {
  GridMismatch,
  Inconsistency,
  InvalidRegime,
  Nonconvergence,
  Dependency,
  Compatibility,
  TailIntegration,
  CorrectorInfeasible,
  IllConditioned,
  Precondition,
  Config,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind and, where it makes
// sense, the measured quantity that tripped the check.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, double measured = 0.0);

  ErrorKind kind() const { return kind_; }
  double measured() const { return measured_; }

 private:
  ErrorKind kind_;
  double measured_;
};

}  // namespace discflow
