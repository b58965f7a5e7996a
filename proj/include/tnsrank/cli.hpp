#pragma once

#include <iosfwd>

namespace tnsrank {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitInputError = 1,
  kExitInternalError = 2,
  kExitResourceCap = 3,
};

/// Runs one command line. JSON goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tnsrank
