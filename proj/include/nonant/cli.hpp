#pragma once

#include <iosfwd>

namespace nonant {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitValidation = 2,
  kExitInfeasible = 3,
  kExitOracleMismatch = 4,
  kExitBudget = 5,
};

// Runs the command line `argv[1..argc)`. Interactive input is read from `in`,
// results go to `out`, prompts and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nonant
