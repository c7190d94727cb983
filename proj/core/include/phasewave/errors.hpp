#pragma once

#include <stdexcept>
#include <string>

namespace phasewave {

enum class ErrorCode {
  NoSpinodal,       // stress law has no falling branch
  OutOfBand,        // stress level outside the conjugate band
  NotCenter,        // period requested away from the undamped oscillatory regime
  NotHyperbolic,    // manifold requested at a non-saddle equilibrium
  NotSaddle,        // discrete manifold requested without |lambda+|>1>|lambda-|
  SingularSystem,   // zero pivot in the implicit time-step solve
  SingularLeading,  // vanishing leading coefficient in an amplification quadratic
  NoConvergence,    // eigenvalue iteration failed to converge
  DimensionMismatch,
  ParseError,
  MissingSection,
  RangeError,
  UnknownSelector,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NoSpinodal: return "NoSpinodal";
    case ErrorCode::OutOfBand: return "OutOfBand";
    case ErrorCode::NotCenter: return "NotCenter";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NotSaddle: return "NotSaddle";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::SingularLeading: return "SingularLeading";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingSection: return "MissingSection";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::UnknownSelector: return "UnknownSelector";
  }
  return "UnknownError";
}

}  // namespace phasewave
