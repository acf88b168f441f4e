#pragma once

#include <Eigen/Dense>
#include <memory>

#include "propertime/errors.hpp"
#include "propertime/fock.hpp"
#include "propertime/params.hpp"

// Clock ⊗ motion dynamics. The Hamiltonian is block-diagonal in the clock
// basis, so everything is stored and evolved per clock branch.
//
// Units and frames: energies in units of ħω, time as the dimensionless ωt.
// Propagators are produced in the clock-rotating frame (the e^{−iω_c t}
// carrier of the excited branch is stripped); lab-frame results reattach the
// carrier as a mod-2π phase on demand. The clock off-diagonal is
// ρ_eg ≡ ⟨e|ρ|g⟩, so in the rotating frame a clock running slow shows a
// positive, slowly growing arg(ρ_eg) and the lab-frame phase is
// arg(ρ_eg) − (ω_c t mod 2π).

namespace propertime::dynamics {

using fock::complexd;
using fock::Matrix;
using fock::Vector;

enum class Frame { rotating, lab };
enum class Variant { oracle, exact, diagonal_sods, perturbative };
enum class MixedPath { ensemble, full_density };

// Dimensionless clock-branch blocks of the Hamiltonian:
//   ground:  n̂ + 1/2
//   excited: n̂ + 1/2 − (ε_c/2) P̂²   (+ ω_c/ω in the lab frame)
class BlockHamiltonian {
 public:
  BlockHamiltonian(const ClockParams& params, fock::FockDim dim);

  const Matrix& ground() const { return h_g_; }
  const Matrix& excited_rotating() const { return h_e_rot_; }
  Matrix excited_lab() const;
  Matrix full(Frame frame) const;  // 2·dim square, clock-major blocks (g, e)
  int dim() const { return static_cast<int>(h_g_.rows()); }

 private:
  Matrix h_g_;
  Matrix h_e_rot_;
  double ratio_;
};

// Materialized branch propagators at one time, rotating frame.
struct PropagatorSet {
  fock::Operator u_g;
  fock::Operator u_e;
  double omega_t;
  Variant variant;
  double zeta;               // −ln(1−ε_c)/4
  double lambda;             // √(1−ε_c)
  double unitarity_defect;   // measured on u_e; ≈ O(ε_c²) for perturbative
};

// Propagator family for fixed (params, dim, variant). The ε_c-dependent
// spectral work (eigendecomposition or squeeze construction) happens once in
// the constructor; evaluation at each ωt is then O(dim²).
//
// Variants:
//   oracle        exp(−i H_e ωt) by eigendecomposition (reference answer)
//   exact         S(ζ) e^{−iλωt(n̂+1/2)} S†(ζ)
//   diagonal_sods e^{−iωt(n̂+1/2)} e^{+iε_cωt(2n̂+1)/4} (number-diagonal)
//   perturbative  E + (ε_c/8)(E Q − Q E), E = e^{−iλωt(n̂+1/2)}, Q = a†²−a²;
//                 unitary only to O(ε_c²)
class Propagators {
 public:
  Propagators(const ClockParams& params, fock::FockDim dim, Variant variant);

  PropagatorSet at(double omega_t) const;
  Vector apply_g(double omega_t, const Vector& v) const;
  Vector apply_e(double omega_t, const Vector& v) const;

  Variant variant() const { return variant_; }
  int dim() const { return dim_; }
  const ClockParams& params() const { return params_; }
  double zeta() const { return zeta_; }
  double lambda() const { return lambda_; }

 private:
  ClockParams params_;
  int dim_;
  Variant variant_;
  double zeta_;
  double lambda_;
  Eigen::VectorXd half_levels_;              // n + 1/2
  std::unique_ptr<fock::HermitianSpectrum> oracle_;  // oracle variant
  Matrix squeeze_;                           // exact variant: S(ζ)
  Matrix q_;                                 // perturbative variant: a†² − a²
};

// Joint pure state, stored per clock branch. ‖block_g‖² + ‖block_e‖² = 1.
struct CompositeState {
  Vector block_g;
  Vector block_e;
  Frame frame = Frame::rotating;
  double omega_t = 0.0;
};

// (|g⟩ + |e⟩)/√2 ⊗ prep: the state after an ideal first Ramsey pulse.
CompositeState ramsey_initial(const fock::MotionalState& prep,
                              Frame frame = Frame::rotating);

// Propagates from state.omega_t to omega_t_target (free evolution; the two
// branch propagators compose, so stepping and one-shot evolution agree).
// lab_carrier_delta is the extra e^{−iφ} carrier accrued by the excited
// branch over this interval; used only in the lab frame.
CompositeState evolve(const CompositeState& state, const Propagators& props,
                      double omega_t_target, double lab_carrier_delta = 0.0);

// 2×2 clock state after tracing out the motion. rho rows/cols are ordered
// (g, e); rho_eg = rho(1,0) = ⟨block_g|block_e⟩.
struct ClockReducedState {
  Eigen::Matrix2cd rho;
  complexd rho_eg;
  double visibility;  // 2|rho_eg|, clipped to [0, 1]
  double phase;       // principal arg(rho_eg); 0 when the coherence vanishes
  double purity;      // Tr ρ²
};

ClockReducedState reduce_to_clock(const CompositeState& state);

// Balanced-superposition Ramsey evolution of a mixed motional state,
// reduced to the clock at omega_t.
//
// ensemble path: eigendecompose ρ_m (trivial for thermal/diagonal input) and
// average the pure-state coherences; eigencomponents beyond cumulative weight
// 1 − 1e-15 are dropped (deterministically, in level order). full_density
// path: ρ_eg = Tr(U_e ρ_m U_g†)/2 with everything materialized; exact but
// dim× slower, kept as a cross-check.
ClockReducedState mixed_state_evolution(const fock::MotionalDensity& rho_m,
                                        const Propagators& props,
                                        double omega_t,
                                        MixedPath path = MixedPath::ensemble,
                                        double tail_tol = 1e-9);

}  // namespace propertime::dynamics
