#include "propertime/params.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace propertime {

namespace {

void check_eps(double eps_c, double eps_m) {
  if (!(eps_c >= 0.0) || !(eps_c < 1.0)) {
    throw UnphysicalParameters("eps_c must lie in [0, 1), got " +
                               std::to_string(eps_c));
  }
  if (!(eps_m >= 0.0) || eps_m > eps_c) {
    throw UnphysicalParameters(
        "eps_m must lie in [0, eps_c] (trap quantum below clock quantum)");
  }
}

constexpr double kClockWavelengthM = 267e-9;
constexpr double kAlMassU = 26.981;
constexpr double kBMassU = 10.013;

}  // namespace

ClockParams ClockParams::from_physical(double omega_c, double omega,
                                       double mass_kg) {
  if (!(omega_c > 0.0) || !(omega > 0.0) || !(mass_kg > 0.0)) {
    throw UnphysicalParameters("frequencies and mass must be positive");
  }
  if (omega > omega_c) {
    throw UnphysicalParameters(
        "trap frequency above clock frequency is outside this model");
  }
  const double mc2 = mass_kg * constants::c * constants::c;
  ClockParams p;
  p.eps_c_ = constants::hbar * omega_c / mc2;
  p.eps_m_ = constants::hbar * omega / mc2;
  p.ratio_ = omega_c / omega;
  check_eps(p.eps_c_, p.eps_m_);
  p.omega_ = omega;
  p.omega_c_ = omega_c;
  p.mass_ = mass_kg;
  return p;
}

ClockParams ClockParams::dimensionless(double eps_c, double omega_ratio) {
  if (!(omega_ratio >= 1.0)) {
    throw UnphysicalParameters("omega_c/omega ratio must be >= 1, got " +
                               std::to_string(omega_ratio));
  }
  ClockParams p;
  p.eps_c_ = eps_c;
  p.eps_m_ = eps_c / omega_ratio;
  p.ratio_ = omega_ratio;
  check_eps(p.eps_c_, p.eps_m_);
  return p;
}

ClockParams ClockParams::al_plus(double trap_mhz) {
  if (!(trap_mhz > 0.0)) {
    throw UnphysicalParameters("trap frequency must be positive");
  }
  const double omega = 2.0 * std::numbers::pi * trap_mhz * 1e6;
  const double omega_c =
      2.0 * std::numbers::pi * constants::c / kClockWavelengthM;
  return from_physical(omega_c, omega, kAlMassU * constants::atomic_mass);
}

ClockParams ClockParams::b_plus(double trap_mhz) {
  if (!(trap_mhz > 0.0)) {
    throw UnphysicalParameters("trap frequency must be positive");
  }
  const double omega = 2.0 * std::numbers::pi * trap_mhz * 1e6;
  const double omega_c =
      2.0 * std::numbers::pi * constants::c / kClockWavelengthM;
  return from_physical(omega_c, omega, kBMassU * constants::atomic_mass);
}

double ClockParams::omega_si() const {
  if (!omega_) {
    throw UnphysicalParameters(
        "parameters were built dimensionless; no absolute trap frequency");
  }
  return *omega_;
}

double ClockParams::omega_c_si() const {
  if (!omega_c_) {
    throw UnphysicalParameters(
        "parameters were built dimensionless; no absolute clock frequency");
  }
  return *omega_c_;
}

double ClockParams::mass_kg() const {
  if (!mass_) {
    throw UnphysicalParameters(
        "parameters were built dimensionless; no mass");
  }
  return *mass_;
}

double ClockParams::omega_t(double seconds) const {
  return omega_si() * seconds;
}

double ClockParams::theta(double seconds) const {
  return eps_c_ * omega_t(seconds);
}

double ClockParams::omega_c_t_mod_2pi(double seconds) const {
  // ω_c t is ~1e16 rad at t=1 s; 80-bit arithmetic keeps the mod-2π result
  // meaningful to ~1e-4 rad there. Dimensionless workflows never call this.
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  long double ph = std::fmod(static_cast<long double>(omega_c_si()) *
                                 static_cast<long double>(seconds),
                             two_pi);
  if (ph < 0.0L) ph += two_pi;
  return static_cast<double>(ph);
}

}  // namespace propertime
