#include "tgs/error.hpp"

#include <cstdlib>
#include <limits>

namespace tgs {

std::string_view error_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::MissingZeroIdentity: return "MissingZeroIdentity";
    case ErrorKind::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::NotAnIdeal: return "NotAnIdeal";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::MaximalityFailed: return "MaximalityFailed";
    case ErrorKind::ActionNotClosed: return "ActionNotClosed";
    case ErrorKind::GroupRequired: return "GroupRequired";
    case ErrorKind::NotASubmodule: return "NotASubmodule";
    case ErrorKind::QuotientNotWellDefined: return "QuotientNotWellDefined";
    case ErrorKind::NotACover: return "NotACover";
    case ErrorKind::NotExactInput: return "NotExactInput";
    case ErrorKind::ResolutionFailed: return "ResolutionFailed";
    case ErrorKind::CorruptIndex: return "CorruptIndex";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

std::size_t scaled_guard(std::size_t base) {
  const char* env = std::getenv("TGS_GUARD");
  if (env == nullptr) return base;
  char* end = nullptr;
  double factor = std::strtod(env, &end);
  if (end == env || !(factor > 0.0)) return base;
  double scaled = static_cast<double>(base) * factor;
  if (scaled >= static_cast<double>(std::numeric_limits<std::size_t>::max()))
    return std::numeric_limits<std::size_t>::max();
  return static_cast<std::size_t>(scaled);
}

void enforce_guard(std::size_t value, std::size_t base, std::string_view what) {
  std::size_t limit = scaled_guard(base);
  if (value > limit) {
    throw Error(ErrorKind::SizeGuardExceeded,
                std::string(what) + " needs " + std::to_string(value) +
                    " > guard " + std::to_string(limit));
  }
}

std::size_t checked_pow(std::size_t base, std::size_t exponent) {
  constexpr std::size_t cap = std::numeric_limits<std::size_t>::max();
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > cap / base) return cap;
    result *= base;
  }
  return result;
}

}  // namespace tgs
