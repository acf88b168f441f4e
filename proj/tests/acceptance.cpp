// Runs the full acceptance suite against the built-in tolerances and prints
// one verdict line per criterion. Exits nonzero if any criterion fails.

#include <cstdio>

#include "propertime/analysis.hpp"
#include "propertime/validation.hpp"

#ifndef PROPERTIME_CLI_PATH
#define PROPERTIME_CLI_PATH ""
#endif

int main() {
  const auto report = propertime::validation::run_acceptance(
      propertime::analysis::ToleranceSpec::defaults(), PROPERTIME_CLI_PATH);
  std::fputs(propertime::validation::report_text(report).c_str(), stdout);
  return report.passed ? 0 : 1;
}
