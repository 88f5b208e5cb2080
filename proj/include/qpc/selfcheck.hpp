#pragma once

#include <string>
#include <vector>

namespace qpc {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

// Exhaustive, exact invariants of the protocol algebra and the state layer.
// No sampling: every branch is forced, so a failure is a defect, never noise.
std::vector<CheckResult> run_invariant_checks();

}  // namespace qpc
