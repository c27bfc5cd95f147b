#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sat2qubo::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kInputError = 3,
};

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sat2qubo::cli
