#include "selectboost/error.hpp"

namespace selectboost {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConstantColumn: return "ConstantColumn";
    case ErrorCode::NotInHyperplane: return "NotInHyperplane";
    case ErrorCode::NotUnitNorm: return "NotUnitNorm";
    case ErrorCode::ZeroResultant: return "ZeroResultant";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::SamplerExhausted: return "SamplerExhausted";
    case ErrorCode::C0OutOfRange: return "C0OutOfRange";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::BadLabels: return "BadLabels";
    case ErrorCode::TooFewObservations: return "TooFewObservations";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace selectboost
