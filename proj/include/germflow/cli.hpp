#pragma once

#include <ostream>

namespace germflow::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailed = 1,       ///< selftest with a failing criterion
  kInput = 2,        ///< parse, domain, degeneracy or range error
  kNumerical = 3,    ///< non-convergence, budget, non-finite, not hyperbolic
  kInconclusive = 4  ///< classify --strict with an inconclusive verdict
};

/// Runs the `germflow` command line. Reports go to `out` (or --out), messages
/// to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace germflow::cli
