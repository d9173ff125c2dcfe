#pragma once

#include <stdexcept>
#include <string>

namespace alcove {

/// Module-specific error codes; the CLI maps them to process exit statuses.
enum class ErrorCode : int {
  Parse = 2,
  File = 3,
  InadmissibleType = 10,
  FullCenterOfD2n = 11,
  NonCyclicSubgroup = 12,
  NonDominantWeight = 20,
  NonInvertible = 30,
  Overflow = 40,
  ContextMismatch = 41,
  DegenerateNotInvertible = 50,
  OddDegenerate = 51,
  VanishingGaussSum = 60,
  NonModularLabelSet = 61,
  IndexOutOfRange = 62,
  NonSymmetricMatrix = 63,
  NonDiagonalPresentation = 64,
  TooLarge = 70,
  Internal = 99,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised when an identity that the theory guarantees fails on computed data.
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what, ErrorCode code = ErrorCode::Internal)
      : Error(code, what) {}
};

}  // namespace alcove
