// Acceptance gate: runs every criterion on the standard grid and prints one
// pass/fail line each. Exits nonzero if any criterion fails.

#include <cstdio>

#include "wumetric/verify.hpp"

int main() {
  const wumetric::VerifyConfig cfg;
  std::printf("acceptance criteria (m in {0.1, 0.25, 0.4}, n in {2, 3}, "
              "p in {0.1, 0.3, 0.5, 0.7, 0.9})\n");
  const std::vector<wumetric::CheckResult> results = wumetric::acceptance_criteria(cfg);
  int failed = 0;
  for (const wumetric::CheckResult& r : results) {
    std::printf("%s %-30s margin=%.3e :: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(),
                r.margin, r.details.c_str());
    if (!r.passed) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed,
              results.size());
  return failed == 0 ? 0 : 1;
}
