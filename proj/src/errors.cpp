#include "phc/errors.hpp"

namespace phc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::InvalidShape: return "invalid shape";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::NonUnitVector: return "non-unit vector";
    case ErrorCode::QuadratureFailure: return "quadrature failure";
    case ErrorCode::ToleranceNotMet: return "tolerance not met";
    case ErrorCode::NegativeGamma: return "negative gamma value";
    case ErrorCode::DivergenceSuspected: return "divergence suspected";
    case ErrorCode::BoundViolation: return "bound violation";
    case ErrorCode::InconsistentConstant: return "inconsistent constant";
    case ErrorCode::IllConditionedFit: return "ill-conditioned fit";
    case ErrorCode::SamplingFailure: return "sampling failure";
    case ErrorCode::Parse: return "parse error";
  }
  return "unknown error";
}

}  // namespace phc
