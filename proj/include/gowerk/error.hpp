#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gowerk {

enum class ErrorCode {
  NotSquare,
  NonFiniteEntry,
  AsymmetricInput,
  NegativeEntry,
  NonzeroDiagonal,
  ConvergenceFailure,
  DimensionMismatch,
  InvalidSVector,
  InvalidArgument,
  NegativeSquaredDistance,
  NotPositiveSemidefinite,
  ConstantTooSmall,
  EmptyCluster,
  ZeroWeightCluster,
  IndexOutOfRange,
  LabelOutOfRange,
  InvalidK,
  KTooLarge,
  TooManyPoints,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (CLI, Python binding) can map it to a stable exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by embed() and friends; keeps the eigenvalue that failed the check.
class NotPositiveSemidefiniteError : public Error {
 public:
  NotPositiveSemidefiniteError(double eigenvalue, const std::string& message)
      : Error(ErrorCode::NotPositiveSemidefinite, message),
        eigenvalue_(eigenvalue) {}

  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

}  // namespace gowerk
