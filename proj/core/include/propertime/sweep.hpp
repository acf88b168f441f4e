#pragma once

#include <cstddef>
#include <string>
#include <vector>

// Cartesian-product evaluation of the closed-form catalog over parameter
// grids, emitted as plot-ready long-format CSV. Rows are ordered with the
// eps_c axis outermost, then r, beta, omega_t, nbar, and the quantity list
// innermost, so identical configs produce byte-identical output.
//
// Quantities are the dimensionless forms; combined arguments are built from
// the axes as Θ = eps_c·omega_t and ε = eps_c·omega_t/4. To sweep at fixed Θ
// directly, set eps_c = 1 and put the Θ values on the omega_t axis.

namespace propertime::sweep {

enum class Quantity {
  squeezed_visibility_exact,   // V(r, Θ)
  squeezed_visibility_approx,  // 1 − (Θ²/16)sinh²2r
  ground_state_visibility,     // V(ε_c, ωt), all orders
  ground_state_visibility_approx,
  ground_state_phase,          // clock-offset phase, all orders
  thermal_visibility,          // V(n̄, ε)
  thermal_phase,               // arg 2ρ_eg(n̄, ε)
  naive_phase,                 // (|0⟩+|2⟩)/√2 projection, no displacement
  qsods_phase,                 // displaced protocol phase φ(β, ε_c, ωt)
  qsods_offset,                // constant protocol offset φ_qSODS(β, ε_c)
  qsods_success,               // protocol success probability P(β, ε_c)
};

Quantity quantity_from_name(const std::string& name);  // ConfigError
const char* quantity_name(Quantity q);

struct SweepConfig {
  std::vector<double> eps_c{0.0};
  std::vector<double> r{0.0};
  std::vector<double> beta{0.0};
  std::vector<double> omega_t{0.0};
  std::vector<double> nbar{0.0};
  std::vector<Quantity> quantities;
  std::size_t max_points = 1000000;  // rows cap (grid size × quantities)
};

struct SweepRow {
  double eps_c;
  double r;
  double beta;
  double omega_t;
  double nbar;
  Quantity quantity;
  double value;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// Throws ConfigError when the row count would exceed config.max_points.
SweepResult run_sweep(const SweepConfig& config);

// Header: eps_c,r,beta,omega_t,nbar,quantity,value
std::string sweep_csv(const SweepResult& result);

}  // namespace propertime::sweep
