#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rolextract::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kNotConverged = 2,
  kInvalidConfig = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rolextract::cli
