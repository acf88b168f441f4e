#pragma once

#include <string>
#include <vector>

#include "propertime/analysis.hpp"

// The release acceptance suite: numeric/analytic equivalence at inflated ε
// plus closed-form reproduction of the documented physical-scale numbers,
// organized as seven criteria. Every threshold comes from the ToleranceSpec
// passed in, so the suite is re-runnable under a loosened or tightened spec.

namespace propertime::validation {

struct CheckResult {
  std::string id;      // e.g. "3b"
  std::string name;
  double measured;     // deviation (≤ checks) or magnitude (≥ checks)
  double bound;
  bool passed;
  bool lower_bound;    // true: passed ⇔ measured ≥ bound
  std::string detail;
};

struct CriterionResult {
  int number;
  std::string title;
  std::vector<CheckResult> checks;
  bool passed;
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool passed;
};

// cli_path, when non-empty, points at the command-line binary and enables the
// end-to-end byte-identical replay check; the in-process replay runs always.
AcceptanceReport run_acceptance(const analysis::ToleranceSpec& tol,
                                const std::string& cli_path = {});

// One line per criterion plus indented per-check lines; ends with a summary.
std::string report_text(const AcceptanceReport& report);
std::string report_json(const AcceptanceReport& report);

}  // namespace propertime::validation
