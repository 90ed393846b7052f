#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mlb::cli {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitConfigError = 1,
  kExitSolverFailure = 2,
  kExitVerificationFailure = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes argv[0].
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mlb::cli
