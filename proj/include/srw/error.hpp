#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace srw {

enum class ErrorCode {
  NotInvolution,
  MissingMirrorEdge,
  NotConnected,
  DuplicateEdge,
  UnknownVertex,
  SizeLimit,
  ContextNotClosed,
  Sink,
  InvalidPath,
  DivergenceConditionViolated,
  NoBasis,
  NotABasis,
  OutOfDomain,
  NotPositiveDefinite,
  NotSolvable,
  Reducible,
  Singular,
  DimensionTooHigh,
  BoundarySingularity,
  TooManyBins,
  ParseError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace srw
