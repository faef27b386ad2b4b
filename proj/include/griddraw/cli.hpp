#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace griddraw {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  /// Instance too large for the requested exact method, or a failed verification.
  exit_infeasible = 1,
  exit_bad_arguments = 2,
};

/// Runs the griddraw command line. args[0] is the program name.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace griddraw
