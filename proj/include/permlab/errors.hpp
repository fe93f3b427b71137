#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace permlab {

enum class Errc {
  NotABijection,
  PositionOutOfRange,
  RankOutOfRange,
  ROutOfRange,
  KOutOfRange,
  NTooSmall,
  TooLargeForEnumeration,
  IndexOutOfRange,
  BudgetExceeded,
  ShiftZero,
  ParameterOutOfRange,
  HypothesisViolated,
  EqualIndices,
  UnknownStrategy,
  NotLatin,
  InvalidInput,
};

std::string_view to_string(Errc code) noexcept;

/// The single exception type thrown by the library. `code()` identifies the
/// failed precondition; `what()` carries a human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// Guard and budget refusals are distinguished from ordinary bad input.
  bool is_refusal() const noexcept {
    return code_ == Errc::TooLargeForEnumeration || code_ == Errc::BudgetExceeded;
  }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

inline void require(bool condition, Errc code, const std::string& detail) {
  if (!condition) fail(code, detail);
}

}  // namespace permlab
