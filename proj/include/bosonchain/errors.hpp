#pragma once

#include <stdexcept>
#include <string>

namespace bosonchain {

enum class ErrorCode {
  InvalidArgument,
  Config,
  UnstableRegime,      // Sigma_j <= 0, couplings cannot be squeezed away
  Unstable,            // drift has a non-negative spectral abscissa
  NotTopological,
  WrongPhase,
  AnalyticUnsupported,
  UnphysicalCovariance,
  Domain,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Thrown by steady-state solvers; carries the offending spectral abscissa.
class UnstableError : public Error {
 public:
  UnstableError(const std::string& what, double abscissa)
      : Error(ErrorCode::Unstable, what), abscissa_(abscissa) {}
  double spectral_abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

}  // namespace bosonchain
