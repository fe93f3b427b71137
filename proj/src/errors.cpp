#include "permlab/errors.hpp"

namespace permlab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NotABijection: return "NotABijection";
    case Errc::PositionOutOfRange: return "PositionOutOfRange";
    case Errc::RankOutOfRange: return "RankOutOfRange";
    case Errc::ROutOfRange: return "ROutOfRange";
    case Errc::KOutOfRange: return "KOutOfRange";
    case Errc::NTooSmall: return "NTooSmall";
    case Errc::TooLargeForEnumeration: return "TooLargeForEnumeration";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::ShiftZero: return "ShiftZero";
    case Errc::ParameterOutOfRange: return "ParameterOutOfRange";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::EqualIndices: return "EqualIndices";
    case Errc::UnknownStrategy: return "UnknownStrategy";
    case Errc::NotLatin: return "NotLatin";
    case Errc::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

}  // namespace permlab
