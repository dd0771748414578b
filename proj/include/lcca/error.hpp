#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lcca {

enum class ErrorCode {
  InvalidArgument,
  SampleCountMismatch,
  DimensionMismatch,
  InsufficientSamples,
  ZeroMatrix,
  NotSymmetric,
  EmptyNeighborhood,
  EmptyAnchors,
  NegativeDistance,
  DegenerateMetric,
  DegenerateKernel,
  TooManyComponents,
  ZeroTensor,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind rather than on message text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lcca
