#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcov::cli {

enum ExitCode : int {
  kOk = 0,
  kNotClean = 1, // coverage diagnostics under --strict, or validation failures
  kError = 2,    // usage, file or parse error
};

struct Environment {
  /// Styling for text written to `out` (never applied to --out files).
  bool color = false;
};

/// Runs one designcov command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, Environment env = {});

} // namespace dcov::cli
