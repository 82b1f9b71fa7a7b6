#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zpr {

enum ExitCode : int {
  exit_ok = 0,
  exit_internal = 1,
  exit_usage = 2,
  exit_validation = 3,
  exit_budget = 4,
  exit_construction = 5,
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zpr
