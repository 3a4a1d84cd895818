#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace legzeros::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kNumeric = 2,
  kVerification = 3,
};

/// Runs the command line `args` (program name first). Data goes to `out`,
/// diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Shortest decimal that reads back to the same double.
std::string shortest(double v);

}  // namespace legzeros::cli
