#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "propertime/errors.hpp"
#include "propertime/params.hpp"

namespace propertime::analysis {

// Continuous phase from principal-branch samples. Consecutive samples must
// differ by less than π after branch reduction; a jump at the π boundary is
// unresolvable and throws UnwrapFailure with the sample index.
std::vector<double> unwrap_phase(const std::vector<double>& wrapped);

struct FitResult {
  double slope;             // rad per unit ωt
  double intercept;         // rad
  double residual_rms;      // rad
  double fractional_shift;  // slope·(ω/ω_c); negative = clock runs slow
};

// Least-squares line through (x, y); needs ≥ 3 samples and a nondegenerate x
// spread. fractional_shift is 0 here (no params).
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Fit of an unwrapped clock-offset phase series against ωt, converting the
// slope to Δν/ν with the frequency ratio.
FitResult fit_fractional_shift(const std::vector<double>& omega_t,
                               const std::vector<double>& phase,
                               const ClockParams& params);

// log(m1/m2) / log(eps1/eps2): the empirical power of a deviation metric in
// eps. Both metrics and both eps must be positive and eps1 ≠ eps2.
double scaling_exponent(double metric1, double metric2, double eps1,
                        double eps2);

// Every tolerance used by the validation suite and the test binaries, as one
// declarative bundle. Values are overridable through a key=value file
// ('#' comments allowed); unknown keys are rejected.
struct ToleranceSpec {
  double fidelity_min = 1.0 - 1e-9;       // oracle/decomposition state fidelity
  double phase_abs_tol = 1e-9;            // pointwise coherence deviation (pure)
  double offdiag_abs_tol = 1e-8;          // pointwise coherence deviation (mixed)
  double shift_rel_tol = 1e-3;            // fitted fractional shift vs closed form
  double scaling_band = 0.2;              // allowed departure from integer exponents
  double qsods_scaling_band = 0.3;        // same, for the projected-protocol phase
  double high_t_rel_tol = 0.02;           // high-T vs exact thermal crossover
  double visibility_al_abs_tol = 0.005;   // squeezed preset visibility window
  double sqsods_rel_tol = 0.03;           // squeezed preset shift window
  double visibility_b_abs_tol = 0.01;     // heavy-squeezing preset visibility
  double approx_break_min = 0.2;          // required approx-form failure there
  double qsods_offset_rel_tol = 0.05;     // averaged protocol offset vs closed form
  double success_prob_abs_tol = 0.005;    // projection success probability
  double norm_tol = 1e-12;                // unitarity / norm preservation
  double convergence_tol = 1e-8;          // expectation drift under dim doubling
  double completeness_tol = 1e-10;        // Σ success over a complete projector set

  static ToleranceSpec defaults() { return ToleranceSpec{}; }
  static ToleranceSpec from_file(const std::string& path);
  void save(const std::string& path) const;

  // (key, pointer) table driving parse/save; order is the file order.
  struct Field {
    const char* key;
    double ToleranceSpec::* member;
  };
  static const std::vector<Field>& fields();
};

// Pointwise comparison of a numeric series against a reference series.
struct CompareReport {
  std::size_t count = 0;
  double max_abs_dev = 0.0;
  std::size_t max_abs_index = 0;
  double rms_dev = 0.0;
  double max_rel_dev = 0.0;   // relative to |reference|, skipping tiny refs
  std::size_t max_rel_index = 0;
  double tolerance = 0.0;     // absolute tolerance the verdict used
  bool pass = false;
  std::vector<double> abs_dev;  // per point
};

CompareReport compare_series(const std::vector<std::complex<double>>& numeric,
                             const std::vector<std::complex<double>>& reference,
                             double abs_tol);
CompareReport compare_series(const std::vector<double>& numeric,
                             const std::vector<double>& reference,
                             double abs_tol);

// Summary (no per-point array) as a JSON object string.
std::string report_json(const CompareReport& report);

}  // namespace propertime::analysis
