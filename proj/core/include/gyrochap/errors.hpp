#pragma once

#include <stdexcept>
#include <string>

namespace gyrochap {

enum class SpecErrorCode {
  NonPositiveInertia,
  IndefiniteOperator,
  ZeroEpsilon,
  NonSkewKappa,
  InconsistentRadii,
  DimensionMismatch,
};

const char* to_string(SpecErrorCode c);

class spec_error : public std::invalid_argument {
 public:
  spec_error(SpecErrorCode code, const std::string& what)
      : std::invalid_argument(std::string(to_string(code)) + ": " + what), code_(code) {}
  SpecErrorCode code() const noexcept { return code_; }

 private:
  SpecErrorCode code_;
};

enum class IntegrationFailure { StepUnderflow, NonFinite, MaxSteps };

class integration_error : public std::runtime_error {
 public:
  integration_error(IntegrationFailure kind, double t, const std::string& what)
      : std::runtime_error(what), kind_(kind), t_(t) {}
  IntegrationFailure kind() const noexcept { return kind_; }
  double time() const noexcept { return t_; }

 private:
  IntegrationFailure kind_;
  double t_;
};

/// Raised when a formula is evaluated outside its domain (wrong family,
/// argument outside a branch, degenerate configuration).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace gyrochap
