#pragma once

#include <string>
#include <vector>

// Benchmark acceptance checks: quantitative reproduction of the settling-time
// formulas and dynamics identities, and the qualitative controller-comparison
// claims (error ordering, reaching order, chattering reduction, disturbance
// rejection, reaching condition, determinism) under the documented defaults.

namespace armlab::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CriterionResult> evaluate_all();

// One PASS/FAIL line per criterion.
std::string summary_text(const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace armlab::acceptance
