#pragma once

#include <iosfwd>

namespace avq::cli {

enum ExitCode : int { kAccepted = 0, kRejected = 1, kInvalidInput = 2, kRetriable = 3 };

/// Runs one command line. Machine output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace avq::cli
