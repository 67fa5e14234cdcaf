#pragma once

#include <string>
#include <vector>

#include "germflow/kernels.hpp"

namespace germflow {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  /// Deterministic summary of the measured quantities (no timings).
  std::string detail;
  /// Wall time; kept out of reports so they stay byte-identical.
  double seconds = 0.0;
};

/// Criteria 1..9; criterion 10 (CLI determinism) lives in the test binary.
[[nodiscard]] CriterionResult run_criterion(int id, ExecPolicy policy = ExecPolicy::Parallel);
[[nodiscard]] std::vector<CriterionResult> run_acceptance(ExecPolicy policy = ExecPolicy::Parallel);

/// One "criterion N: PASS|FAIL name: detail" line per result.
[[nodiscard]] std::string format_report(const std::vector<CriterionResult>& results);

}  // namespace germflow
