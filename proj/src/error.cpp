#include "srw/error.hpp"

namespace srw {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::MissingMirrorEdge: return "MissingMirrorEdge";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::ContextNotClosed: return "ContextNotClosed";
    case ErrorCode::Sink: return "Sink";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::DivergenceConditionViolated: return "DivergenceConditionViolated";
    case ErrorCode::NoBasis: return "NoBasis";
    case ErrorCode::NotABasis: return "NotABasis";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotSolvable: return "NotSolvable";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionTooHigh: return "DimensionTooHigh";
    case ErrorCode::BoundarySingularity: return "BoundarySingularity";
    case ErrorCode::TooManyBins: return "TooManyBins";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace srw
