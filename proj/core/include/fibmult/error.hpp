#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fibmult {

enum class ErrorCode {
  CodomainMismatch,
  InvalidInput,
  ReservedLabel,
  NotAFibration,
  NoLift,
  AmbiguousLift,
  NotIso,
  ShapeMismatch,
  MissingProducts,
  LawViolation,
  BoundTooSmall,
  NotExtensive,
  BadParams,
  NotUnary,
  NoTriangle,
  AmbiguousTriangle,
  InvalidPresentation,
  MissingDiagonal,
  NotASection,
  SyntaxError,
  UndeclaredId,
  UnknownCommand,
  BadFlags,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code. Thrown for contract
/// violations; failed axiom checks are returned as data instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fibmult
