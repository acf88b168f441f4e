#pragma once

#include <string>
#include <utility>
#include <vector>

#include "propertime/analysis.hpp"
#include "propertime/dynamics.hpp"
#include "propertime/fock.hpp"
#include "propertime/params.hpp"

// Experiment-level simulations. A Ramsey sequence is: ideal π/2 pulse,
// free evolution to ωt, reduction of the clock (reading ρ_eg directly is
// equivalent to the second pulse plus population readout). The projected
// protocol adds a state-dependent displacement and a motional projection
// before reading the clock, which converts O(ε_c) propagator structure into
// a constant clock phase offset.
//
// Phase series convention: ProtocolResult.phase_unwrapped is the clock-offset
// phase φ(t) = −arg(ρ_eg, rotating frame), unwrapped; its slope over ωt times
// ω/ω_c is Δν/ν, negative for a redshifted clock.

namespace propertime::protocols {

// Initial motional preparation.
struct PrepSpec {
  enum class Kind { vacuum, fock, thermal, squeezed };
  Kind kind = Kind::vacuum;
  int n = 0;         // fock
  double nbar = 0.0; // thermal
  double r = 0.0;    // squeezed
  double theta = 0.0;

  bool pure() const { return kind != Kind::thermal; }
  // "vacuum" | "fock:N" | "thermal:NBAR" | "squeezed:R[,THETA]"
  static PrepSpec parse(const std::string& text);
  std::string str() const;
  // Dimension chosen by doubling until the prepared state's tail is < tol.
  int adaptive_dim(double tol = 1e-12) const;
};

std::vector<double> linspace(double start, double stop, int count);

struct RamseyConfig {
  ClockParams params = ClockParams::dimensionless(0.0, 1.0);
  PrepSpec prep;
  dynamics::Variant variant = dynamics::Variant::exact;
  std::vector<double> grid;  // ωt samples, strictly increasing, grid[0] ≥ 0
  int dim = 0;               // 0 → adaptive from prep
  dynamics::MixedPath mixed_path = dynamics::MixedPath::ensemble;
};

enum class Projector { plus01, plus02, custom };

struct QsodsConfig {
  ClockParams params = ClockParams::dimensionless(0.0, 1.0);
  double beta = 1.0;
  Projector projector = Projector::plus01;
  fock::Vector custom_projector;  // used only when projector == custom
  dynamics::Variant variant = dynamics::Variant::exact;  // exact or oracle
  int dim = 128;
  int periods = 16;             // averaging window, full trap periods
  int samples_per_period = 64;  // ≥ 32
};

struct ProtocolResult {
  std::vector<double> omega_t;
  std::vector<fock::complexd> rho_eg;   // rotating frame
  std::vector<double> visibility;
  std::vector<double> phase_unwrapped;  // clock-offset phase, rad
  std::vector<double> success_prob;     // ≡ 1 for plain Ramsey
  std::vector<std::size_t> flagged;     // indices with success below 1e-6
  bool pure_prep = true;
  int dim = 0;

  analysis::FitResult fit{};  // phase vs ωt; valid flag below
  bool fit_valid = false;
  double time_averaged_phase = 0.0;  // detrended mean; valid flag below
  bool average_valid = false;
  double min_visibility = 1.0;
  double mean_success = 1.0;  // trapezoid average over the grid
};

ProtocolResult run_ramsey(const RamseyConfig& config);

// 1 − V(t) and the clock purity (1+V²)/2. Meaningful as an entanglement
// witness only for pure motional preparations; throws InvalidWitnessInput
// for mixed ones.
struct WitnessSeries {
  std::vector<double> one_minus_v;
  std::vector<double> clock_purity;
};
WitnessSeries entanglement_witness(const ProtocolResult& result);

// Branch operators of D(β) = e^{−iβ Ẑ_c X̂}: (e^{+iβX̂} on g, e^{−iβX̂} on e).
std::pair<fock::Operator, fock::Operator> state_dependent_displacement(
    double beta, fock::FockDim dim);

ProtocolResult run_qsods_protocol(const QsodsConfig& config);

// Mean of the series after removing the fitted linear-in-ωt trend (slope
// only; the constant survives). Requires a uniform grid spanning an integer
// number ≥ window of 2π trap periods with ≥ 32 samples per period; the
// oscillatory terms then cancel and sin² terms contribute their mean.
// Trapezoid weights make the cancellation exact on the uniform grid.
double time_average_phase(const std::vector<double>& omega_t,
                          const std::vector<double>& phase, int window = 1);

}  // namespace propertime::protocols
