#pragma once

#include <string>
#include <vector>

namespace alcove {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id);
/// Runs the given criteria (all when empty) in order.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});
/// "criterion <id>: PASS|FAIL <title> (<detail>)", optionally followed by " [<seconds>s]".
std::string format_result(const CriterionResult& r, bool timing = true);

}  // namespace alcove
