#include "padicrama/error.hpp"

namespace padicrama {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InversionOfZero: return "InversionOfZero";
    case ErrorCode::NonCoprimeModuli: return "NonCoprimeModuli";
    case ErrorCode::PrecisionUnavailable: return "PrecisionUnavailable";
    case ErrorCode::BadPrime: return "BadPrime";
    case ErrorCode::NegativeValuationSum: return "NegativeValuationSum";
    case ErrorCode::GuardExhausted: return "GuardExhausted";
    case ErrorCode::UnknownCoefficient: return "UnknownCoefficient";
    case ErrorCode::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorCode::InconsistentResidues: return "InconsistentResidues";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace padicrama
