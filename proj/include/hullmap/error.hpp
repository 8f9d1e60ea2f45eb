#pragma once

#include <stdexcept>
#include <string>

namespace hullmap {

enum class ErrorCode {
  DuplicatePoints,
  DimensionMismatch,
  IndexOutOfRange,
  InvalidArgument,
  NumericalOverflow,
  StrategyDimensionMismatch,
  DegenerateConfiguration,
  TooManyPoints,
  AmbiguousTie,
  NotOnBoundary,
  DimensionUnsupported,
  EmptySet,
  EmptyProbe,
  RequiresDegenerate,
  Io,
  Parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace hullmap
