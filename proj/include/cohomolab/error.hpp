#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cohomolab {

enum class ErrorKind {
  DimensionMismatch,
  CompositionNotZero,
  NotWellDefined,
  SizeOverflow,
  NotAGroup,
  NotOrderAutomorphism,
  NotHomomorphism,
  NotAnAutomorphism,
  RegionArityMismatch,
  RegionNotGStable,
  NotClosedUnderDifferential,
  NotGInvariantCovering,
  NotACovering,
  NotACocycle,
  NotContinuous,
  NotEquivariant,
  NotFreeAction,
  SignProfileFailure,
  SourceMembership,
  BasepointInvalid,
  BoundTooSmall,
  NotStabilized,
  ParseError,
  ValidationError,
  Internal,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cohomolab
