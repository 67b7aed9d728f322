#pragma once

#include <string>
#include <vector>

namespace gwq {

struct CriterionResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Runs the full acceptance battery.  Exactly eight results, in a fixed
// order; every check is exact rational arithmetic (no tolerances).
std::vector<CriterionResult> run_selftest();

}  // namespace gwq
