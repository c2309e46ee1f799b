#include "coxkit/errors.hpp"

namespace coxkit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPointed: return "NonPointed";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::DepthInsufficient: return "DepthInsufficient";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::DependsOnTarget: return "DependsOnTarget";
    case ErrorCode::NotHomogeneousShear: return "NotHomogeneousShear";
    case ErrorCode::SingularLinear: return "SingularLinear";
    case ErrorCode::ImagesNotHomogeneous: return "ImagesNotHomogeneous";
    case ErrorCode::NotElementary: return "NotElementary";
    case ErrorCode::NotGradingPreserving: return "NotGradingPreserving";
    case ErrorCode::NotInDualCone: return "NotInDualCone";
    case ErrorCode::ClosureCapExceeded: return "ClosureCapExceeded";
    case ErrorCode::NotInvertible: return "NotInvertible";
  }
  return "Unknown";
}

}  // namespace coxkit
