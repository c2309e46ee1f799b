#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coxkit {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  NonPointed,
  NotFullDimensional,
  NotSaturated,
  DepthInsufficient,
  SyntaxError,
  UnknownVariable,
  NonSquare,
  DependsOnTarget,
  NotHomogeneousShear,
  SingularLinear,
  ImagesNotHomogeneous,
  NotElementary,
  NotGradingPreserving,
  NotInDualCone,
  ClosureCapExceeded,
  NotInvertible,
};

std::string_view to_string(ErrorCode code);

/// Domain error raised by every coxkit operation. The code is stable and is
/// what the CLI reports in its error payload.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coxkit
