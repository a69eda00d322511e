#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace plottlat::cli {

enum ExitCode : int {
  kSuccess = 0,
  kContractFailure = 1,
  kUsageError = 2,
  kResourceCap = 3,
};

/// Runs one invocation. `args` excludes the program name. Output is
/// deterministic for a given instance and flag set.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace plottlat::cli
