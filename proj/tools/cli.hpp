#pragma once

#include <iosfwd>

namespace stochord::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kOrderFails = 3,
};

/// Full command-line entry point; never throws and only returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stochord::cli
