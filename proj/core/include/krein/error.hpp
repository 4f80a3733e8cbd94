#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace krein {

enum class ErrorCode {
  NotPositiveDefinite,
  NotPositiveSemidefinite,
  NoConvergence,
  RankDeficientBasis,
  NoDeficiency,
  ConstructionMismatch,
  SingularDecomposition,
  NotOrthogonal,
  DomainError,
  BracketFailure,
  Overflow,
  UnsupportedChannel,
  NonMonotoneError,
  InsufficientData,
  InsufficientEigenvalues,
  InvalidArgument,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures surface as krein::Error; the code distinguishes them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace krein
