#pragma once

#include <stdexcept>
#include <string>

namespace phc {

enum class ErrorCode {
  Domain,
  InvalidShape,
  DimensionMismatch,
  NonUnitVector,
  QuadratureFailure,
  ToleranceNotMet,
  NegativeGamma,
  DivergenceSuspected,
  BoundViolation,
  InconsistentConstant,
  IllConditionedFit,
  SamplingFailure,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code drives the C API status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace phc
