#pragma once

#include <iosfwd>

namespace tmsr::app {

/// Exit statuses of the tmsr tool.
enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitConfig = 2, kExitNumerical = 3 };

/// Parses arguments, runs the selected subcommand and returns the exit status.
/// Artifacts go to `out` unless --out is given; diagnostics go to `err`.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace tmsr::app
