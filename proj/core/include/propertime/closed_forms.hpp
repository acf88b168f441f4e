#pragma once

#include <string>

#include "propertime/fock.hpp"
#include "propertime/params.hpp"

// Analytic catalog: every frequency-shift, phase, and visibility formula as a
// pure function of dimensionless inputs.
//
// Conventions (same as dynamics):
//  * functions named *_offdiag return the normalized coherence 2ρ_eg in the
//    clock-rotating frame; pass a lab carrier phase (ω_c t mod 2π) to get the
//    lab-frame value, which multiplies on e^{−i·carrier};
//  * scalar "phase" functions return the clock-offset phase
//    φ = −arg(2ρ_eg, rotating); negative φ means the clock runs slow, so
//    fractional shifts Δν/ν = φ/(ω_c t) come out negative for redshifts;
//  * ε = ε_c ωt/4 (thermal sections), Θ = ε_m ω_c t = ε_c ωt (squeezed
//    sections).

namespace propertime::closed_forms {

using fock::complexd;

struct ShiftResult {
  double fractional_shift;  // Δν/ν
  double phase_offset;      // accumulated clock-offset phase where applicable
  double visibility;
  std::string regime;       // first-order | exact | high-T | time-averaged
};

// ω_c'(n)/ω_c = 1 − ε_m(2n+1)/4.
double clock_frequency_factor(int n, const ClockParams& params);
// ω_c'(n) in rad/s; requires SI-backed params.
double shifted_clock_frequency(int n, const ClockParams& params);

// Second-order Doppler shifts: thermal (−ε_m(2n̄+1)/4, n̄=0 gives the vacuum
// value −ε_m/4) and squeezed (−(ε_m/4)cosh 2r).
ShiftResult vacuum_sods(const ClockParams& params);
ShiftResult thermal_sods(double nbar, const ClockParams& params);
ShiftResult squeezed_sods(double r, const ClockParams& params);

// Thermal ensemble at the number-diagonal level; the geometric sum closes
// exactly for every real ε. The phase is the principal branch (continuous
// through ε = 0; series callers unwrap).
complexd thermal_offdiag(double nbar, double eps, double carrier = 0.0);
double thermal_visibility(double nbar, double eps);
double thermal_phase_correction(double nbar, double eps);  // arg(2ρ_eg), rotating

// High-temperature limit (εn̄ fixed, ε → 0): 2ρ_eg = e^{i·arctan(2εn̄)} /
// √(1+4ε²n̄²) in the rotating frame.
complexd thermal_offdiag_high_t(double nbar, double eps, double carrier = 0.0);
ShiftResult thermal_high_t(double nbar, double eps, const ClockParams& params);

// Semiclassical ⟨τ⟩ model: evolution by the averaged proper time only,
// 2ρ_eg = e^{iω_c t·⟨v²⟩/(2c²)} rotating (unit modulus: no visibility loss,
// which is exactly what separates it from the entangling dynamics).
complexd semiclassical_offdiag(double mean_v2_over_c2, double omega_c_t,
                               double carrier = 0.0);
// ⟨v²⟩/c² = ε_m·⟨P²⟩ helpers for the standard preparations.
double thermal_mean_v2_over_c2(double nbar, const ClockParams& params);

// Squeezed vacuum at the number-diagonal level, Θ = ε_m ω_c t:
// 2ρ_eg = e^{iΘ/4} (cosh²r − e^{iΘ} sinh²r)^{−1/2}.
complexd squeezed_offdiag(double r, double theta, double carrier = 0.0);
double squeezed_visibility_exact(double r, double theta);
// V ≈ 1 − (Θ²/16) sinh²(2r); valid while (Θ/2)cosh(2r) < 1.
double squeezed_visibility_approx(double r, double theta);
bool squeezed_approx_in_regime(double r, double theta);

// Motional ground state under the full propagator (all orders in ε_c at the
// decomposition level).
complexd ground_state_offdiag(double eps_c, double omega_t,
                              double carrier = 0.0);
double ground_state_visibility(double eps_c, double omega_t);
// 1 − (ε_c²/16) sin²(ωt).
double ground_state_visibility_approx(double eps_c, double omega_t);
// Clock-offset phase: exact, and its ε_c² series
// −ε_c ωt/4 − ε_c²(ωt/16 − sin(2ωt)/32).
double ground_state_phase(double eps_c, double omega_t);
double ground_state_phase_series(double eps_c, double omega_t);
// Δν/ν(t) = −ε_m/4 − ε_m ε_c/16 + ε_m ε_c sin(2ωt)/(32 ωt); the oscillating
// term averages to zero and the ωt → 0 limit is −ε_m/4.
ShiftResult ground_state_shift(double eps_c, double omega_t,
                               const ClockParams& params);

// Phase after projecting the motion on (|0⟩+|2⟩)/√2 with no displacement:
// φ = −ωt ε_c/4 + (ε_c/(4√2)) sin(2ωt(1−ε_c/4)).
double naive_projection_phase(double eps_c, double omega_t);

// State-dependent-displacement protocol with projector (|0⟩+|1⟩)/√2.
double displaced_arg_offset(double beta);  // arg(2 + 2√2 iβ − β²)
// Full phase: −ωtε_c/4 + arg offset − βε_c sin²(ωt)/(√2(2+β²))
//             + β²ε_c(1−β²/2) sin(2ωt)/(8(2+β²)).
double qsods_protocol_phase(double beta, double eps_c, double omega_t);
// Its time average with the secular term removed and the β-only arg offset
// subtracted: φ_qSODS = −βε_c/(2√2(2+β²)); extremal at β = √2.
double qsods_constant_phase(double beta, double eps_c);
// Success probability of the motional projection: leading
// ((2+β²)/4)e^{−β²/2} and the ε_c-corrected time-averaged form.
double qsods_success_leading(double beta);
double qsods_success(double beta, double eps_c);
// Leading-order conditional coherence (unit modulus up to O(ε_c²)).
complexd offdiag_leading_displaced(double beta, double eps_c, double omega_t);

}  // namespace propertime::closed_forms
