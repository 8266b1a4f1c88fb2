#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cellmatch::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_unmatchable = 2,
  exit_precondition = 3,
};

/// Runs one command line (without the program name). Documents that are not
/// written to a file go to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cellmatch::cli
