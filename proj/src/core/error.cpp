#include "weakwave/error.hpp"

namespace weakwave {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NoCandidates: return "NoCandidates";
    case ErrorCode::DegenerateEverywhere: return "DegenerateEverywhere";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::DegenerateEndpoint: return "DegenerateEndpoint";
    case ErrorCode::InadmissiblePlan: return "InadmissiblePlan";
    case ErrorCode::DivergentIntegral: return "DivergentIntegral";
    case ErrorCode::NotConstructible: return "NotConstructible";
    case ErrorCode::ComplexSlope: return "ComplexSlope";
    case ErrorCode::UnsupportedOverlap: return "UnsupportedOverlap";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
  }
  return "Unknown";
}

}  // namespace weakwave
