#include <cstdio>

#include "alcove/acceptance.hpp"

int main() {
  int failed = 0;
  for (int id = 1; id <= alcove::kCriterionCount; ++id) {
    const auto r = alcove::run_criterion(id);
    std::printf("%s\n", alcove::format_result(r).c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d/%d criteria passed\n", alcove::kCriterionCount - failed, alcove::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
