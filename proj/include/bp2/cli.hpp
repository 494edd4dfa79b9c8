#pragma once

#include <iosfwd>

namespace bp2 {

/// Exit statuses of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitValidation = 2 };

/// Entry point behind the `bp2` executable. Subcommands:
/// simulate | ensemble | equilibrium | verify | sweep.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace bp2
