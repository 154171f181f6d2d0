#pragma once

#include <stdexcept>
#include <string>

namespace finsler {

enum class ErrorKind {
  Argument,      // bad arguments, malformed config, unusable parameters
  Syntax,        // expression parse failure (message carries the position)
  Domain,        // elementary function evaluated outside its domain
  Cone,          // direction outside the metric's cone (radicand <= 0)
  Definiteness,  // matrix not positive definite / not invertible
  Truncation,    // jet order too low for the requested derivative
  Singularity,   // formula denominator vanished (Q/Theta/Psi, eps, gamma, ...)
  Sampling,      // rejection sampler exhausted its retry budget
  Unsupported,   // operation not available for this scalar/metric kind
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace finsler
