#pragma once

#include <iosfwd>

#include "hullmap/error.hpp"

namespace hullmap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kDegenerate = 3,
  kIo = 4,
  kNumeric = 5,
  kAmbiguous = 6,
};

ExitCode exit_code_for(ErrorCode code);

/// Entry point of the `hullmap` tool. Results go to `out` unless an output
/// path is given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hullmap::cli
