#include "krein/error.hpp"

namespace krein {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::RankDeficientBasis: return "RankDeficientBasis";
    case ErrorCode::NoDeficiency: return "NoDeficiency";
    case ErrorCode::ConstructionMismatch: return "ConstructionMismatch";
    case ErrorCode::SingularDecomposition: return "SingularDecomposition";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::UnsupportedChannel: return "UnsupportedChannel";
    case ErrorCode::NonMonotoneError: return "NonMonotoneError";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InsufficientEigenvalues: return "InsufficientEigenvalues";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace krein
