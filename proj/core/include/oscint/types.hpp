#pragma once
#include <complex>
#include <stdexcept>
#include <string>

namespace oscint {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorKind {
  Signature,
  Degenerate,
  NoAdmissibleRotation,
  NoConvergence,
  DegenerateCriticalPoint,
  ToleranceNotReached,
  OscillationLimit,
  BranchAmbiguity,
  OnCriticalLine,
  OverflowRisk,
  ConeViolation,
  RegimeViolation,
  DerivativeUnavailable,
  EvaluationAtOrigin,
  Parse,
  InvalidArgument,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(to_string(k)) + ": " + msg), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace oscint
