#include "bogrape/error.hpp"

namespace bogrape {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::AsymmetricUndirected: return "AsymmetricUndirected";
    case ErrorCode::BadOneHot: return "BadOneHot";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDomain: return "InvalidDomain";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::MissingVariance: return "MissingVariance";
    case ErrorCode::FactorizationFailure: return "FactorizationFailure";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSizeBounds: return "InvalidSizeBounds";
    case ErrorCode::IncompatibleDomain: return "IncompatibleDomain";
    case ErrorCode::UnfittedModel: return "UnfittedModel";
    case ErrorCode::InfeasibleDomainDetected: return "InfeasibleDomainDetected";
    case ErrorCode::UnsupportedBoundedSizeExport: return "UnsupportedBoundedSizeExport";
    case ErrorCode::MissingVariable: return "MissingVariable";
    case ErrorCode::SpaceTooLarge: return "SpaceTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::UnknownOracle: return "UnknownOracle";
  }
  return "Unknown";
}

}  // namespace bogrape
