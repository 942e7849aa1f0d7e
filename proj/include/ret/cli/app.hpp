#pragma once

#include <iosfwd>

namespace ret::cli {

enum ExitCode : int { kSuccess = 0, kConfigFailure = 1, kNumericalFailure = 2 };

/// Full command line entry point; `out` and `err` default to the std streams
/// when writing to stdout.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ret::cli
