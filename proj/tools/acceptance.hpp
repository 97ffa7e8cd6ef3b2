#pragma once

#include <string>
#include <vector>

namespace folddcs::acceptance {

struct CriterionResult {
  int id = 0;
  bool pass = false;
  std::string summary;
  std::vector<std::string> details;
};

inline constexpr int kCriteria = 10;

// Runs criterion `id` (1..10). Throws std::out_of_range for other ids.
CriterionResult run_criterion(int id);

// "criterion N: PASS|FAIL - summary"
std::string format_line(const CriterionResult& r);

}  // namespace folddcs::acceptance
