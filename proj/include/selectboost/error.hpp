#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selectboost {

enum class ErrorCode {
  DimensionTooSmall,
  DimensionMismatch,
  ConstantColumn,
  NotInHyperplane,
  NotUnitNorm,
  ZeroResultant,
  DegenerateModel,
  SamplerExhausted,
  C0OutOfRange,
  NonConvergence,
  BadLabels,
  TooFewObservations,
  InvalidArgument,
  SingularGram,
  MalformedInput,
  Io,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; `code()` distinguishes the failure
// and `index()` carries the offending variable/sample/row when there is one.
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  Error(ErrorCode code, const std::string& what, std::size_t index = npos)
      : std::runtime_error(what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::size_t index_;
};

}  // namespace selectboost
