#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dmsq::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kUnstable = 2,
};

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out`, diagnostics and figure summaries to `err`/`out` as documented in
/// `dmsq --help`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dmsq::cli
