#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tgs {

using Elem = std::uint32_t;

enum class ErrorKind {
  MalformedFile,
  IndexOutOfRange,
  MissingZeroIdentity,
  SizeGuardExceeded,
  BudgetExhausted,
  NotAnIdeal,
  PreconditionViolated,
  NotWellDefined,
  InvalidSystem,
  MaximalityFailed,
  ActionNotClosed,
  GroupRequired,
  NotASubmodule,
  QuotientNotWellDefined,
  NotACover,
  NotExactInput,
  ResolutionFailed,
  CorruptIndex,
  Usage,
};

std::string_view error_name(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the named kinds above,
/// plus a human-readable message that includes any witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

/// Scales a size guard by the TGS_GUARD environment variable (a positive
/// real factor, default 1).
std::size_t scaled_guard(std::size_t base);

/// Throws SizeGuardExceeded when `value` exceeds the scaled guard.
void enforce_guard(std::size_t value, std::size_t base, std::string_view what);

/// Saturating integer power, used for guard arithmetic.
std::size_t checked_pow(std::size_t base, std::size_t exponent);

}  // namespace tgs
