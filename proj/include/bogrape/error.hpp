#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bogrape {

enum class ErrorCode {
  // graph-core
  NonSquare,
  SelfLoop,
  AsymmetricUndirected,
  BadOneHot,
  Disconnected,
  DimensionMismatch,
  InvalidDomain,
  DomainTooLarge,
  SamplingExhausted,
  // kernels / gp
  MissingVariance,
  FactorizationFailure,
  InvalidArgument,
  // mip
  InvalidSizeBounds,
  IncompatibleDomain,
  UnfittedModel,
  InfeasibleDomainDetected,
  UnsupportedBoundedSizeExport,
  MissingVariable,
  SpaceTooLarge,
  ParseError,
  IoError,
  // bo
  UnknownOracle,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bogrape
