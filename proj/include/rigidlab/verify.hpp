#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rigidlab {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  std::string detail;  ///< measured values behind the verdict
  double seconds = 0.0;
};

/// Runs the 12-point acceptance suite in order, printing one line per
/// criterion to `out` as it finishes.  Tolerances are pinned inside; a
/// criterion that throws is reported as a failure with the message.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace rigidlab
