#pragma once

#include <optional>

#include "propertime/errors.hpp"

namespace propertime {

// CODATA 2022 values. hbar, c, k_b are exact by SI definition.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;         // J s
inline constexpr double c = 299792458.0;                // m / s
inline constexpr double k_b = 1.380649e-23;             // J / K
inline constexpr double atomic_mass = 1.66053906892e-27;  // kg
}  // namespace constants

// Clock and trap parameters. Everything downstream runs in dimensionless
// units: time enters as ωt and the dynamics depend only on eps_c and the
// frequency ratio ω_c/ω (eps_m = eps_c/ratio). Absolute SI frequencies are
// kept when available so physical presets can convert seconds to ωt and
// evaluate closed forms at real scale; the huge carrier phase ω_c·t is never
// fed to the dynamics and is exposed only as (ω_c t) mod 2π, computed in
// extended precision.
class ClockParams {
 public:
  // omega_c, omega in rad/s; mass in kg.
  static ClockParams from_physical(double omega_c, double omega, double mass_kg);
  static ClockParams dimensionless(double eps_c, double omega_ratio);

  // Ion presets at a configurable trap frequency: clock transition at 267 nm;
  // masses 26.981 u and 10.013 u.
  static ClockParams al_plus(double trap_mhz = 20.0);
  static ClockParams b_plus(double trap_mhz = 20.0);

  double eps_c() const { return eps_c_; }   // ħω_c / mc²
  double eps_m() const { return eps_m_; }   // ħω / mc²
  double ratio() const { return ratio_; }   // ω_c / ω

  bool has_si() const { return omega_.has_value(); }
  double omega_si() const;    // rad/s; throws when built dimensionless
  double omega_c_si() const;  // rad/s
  double mass_kg() const;     // kg

  double omega_t(double seconds) const;            // ωt
  double theta(double seconds) const;              // Θ = ε_m ω_c t = ε_c ωt
  double omega_c_t_mod_2pi(double seconds) const;  // lab carrier phase

 private:
  ClockParams() = default;
  double eps_c_ = 0.0;
  double eps_m_ = 0.0;
  double ratio_ = 1.0;
  std::optional<double> omega_;
  std::optional<double> omega_c_;
  std::optional<double> mass_;
};

}  // namespace propertime
