#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mastct {

// Exit statuses of the command-line front end. Decision queries answer with
// kYes / kNo.
enum ExitCode : int {
  kYes = 0,
  kNo = 1,
  kUsageError = 2,
  kCapExceeded = 3,
  kInternalError = 4,
};

// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mastct
