// Acceptance suite: runs every criterion of the verification registry at its
// pinned tolerance and prints one pass/fail line per criterion.

#include "fellb/suite.hpp"

#include <cstdio>
#include <cstdlib>

int main() {
  fellb::SuiteOptions opts;
  if (const char* env = std::getenv("FELLB_SEED")) opts.seed = std::strtoull(env, nullptr, 10);

  fellb::SuiteReport report = fellb::run_suite(opts);
  bool all = true;
  for (const auto& c : fellb::criterion_summary(report)) {
    all = all && c.pass;
    std::printf("[%s] %s: %s (%d checks, worst residual %.3g)\n", c.pass ? "PASS" : "FAIL",
                c.id.c_str(), c.title.c_str(), c.checks, c.worst_residual);
  }
  if (!all) {
    std::printf("\nfailed checks:\n");
    for (const auto& c : report.checks)
      if (c.status != "pass")
        std::printf("  [%s] %s (residual %.3g) - %s\n", c.status.c_str(), c.name.c_str(),
                    c.residual, c.anchor.c_str());
  }
  std::printf("%s\n", all ? "acceptance: all criteria pass" : "acceptance: FAILURES");
  return all ? 0 : 1;
}
