#pragma once

#include <stdexcept>
#include <string>

namespace l0guide {

enum class ErrorKind {
  InvalidArgument,
  AmbiguousProjection,
  InfeasibleGeometry,
  ZeroVector,
  DegenerateBaseline,
  BoundUndefined,
  RunawayDivergence,
  ParseError,
  ValidationError,
};

const char* to_string(ErrorKind kind) noexcept;

/// Single exception type for the library; `kind()` tells callers which
/// contract was broken so the CLI can map it onto an exit code.
class GuidanceError : public std::runtime_error {
 public:
  GuidanceError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::AmbiguousProjection: return "AmbiguousProjection";
    case ErrorKind::InfeasibleGeometry: return "InfeasibleGeometry";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::DegenerateBaseline: return "DegenerateBaseline";
    case ErrorKind::BoundUndefined: return "BoundUndefined";
    case ErrorKind::RunawayDivergence: return "RunawayDivergence";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace l0guide
