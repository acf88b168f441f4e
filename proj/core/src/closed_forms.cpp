#include "propertime/closed_forms.hpp"

#include <cmath>
#include <complex>

namespace propertime::closed_forms {

namespace {

constexpr complexd kI(0.0, 1.0);
const double kSqrt2 = std::sqrt(2.0);

void check_nbar(double nbar) {
  if (!(nbar >= 0.0)) {
    throw UnphysicalParameters("mean occupation must be >= 0");
  }
}

void check_r(double r) {
  if (!(r >= 0.0)) {
    throw UnphysicalParameters("squeezing magnitude must be >= 0");
  }
}

void check_beta(double beta) {
  if (!(beta >= 0.0)) {
    throw UnphysicalParameters("displacement strength must be >= 0");
  }
}

}  // namespace

double clock_frequency_factor(int n, const ClockParams& params) {
  if (n < 0) throw UnphysicalParameters("Fock level must be >= 0");
  return 1.0 - params.eps_m() * (2.0 * n + 1.0) / 4.0;
}

double shifted_clock_frequency(int n, const ClockParams& params) {
  return params.omega_c_si() * clock_frequency_factor(n, params);
}

ShiftResult vacuum_sods(const ClockParams& params) {
  return ShiftResult{-params.eps_m() / 4.0, 0.0, 1.0, "first-order"};
}

ShiftResult thermal_sods(double nbar, const ClockParams& params) {
  check_nbar(nbar);
  return ShiftResult{-params.eps_m() * (2.0 * nbar + 1.0) / 4.0, 0.0, 1.0,
                     "first-order"};
}

ShiftResult squeezed_sods(double r, const ClockParams& params) {
  check_r(r);
  return ShiftResult{-params.eps_m() * std::cosh(2.0 * r) / 4.0, 0.0, 1.0,
                     "first-order"};
}

complexd thermal_offdiag(double nbar, double eps, double carrier) {
  check_nbar(nbar);
  const double s = std::sin(eps);
  const double c = std::cos(eps);
  const double m = 2.0 * nbar + 1.0;
  const double phase = std::atan2(m * s, c);
  const double vis = 1.0 / std::sqrt(c * c + m * m * s * s);
  return vis * std::exp(kI * (phase - carrier));
}

double thermal_visibility(double nbar, double eps) {
  return std::abs(thermal_offdiag(nbar, eps));
}

double thermal_phase_correction(double nbar, double eps) {
  check_nbar(nbar);
  return std::atan2((2.0 * nbar + 1.0) * std::sin(eps), std::cos(eps));
}

complexd thermal_offdiag_high_t(double nbar, double eps, double carrier) {
  check_nbar(nbar);
  const double x = 2.0 * eps * nbar;
  return std::exp(kI * (std::atan(x) - carrier)) / std::sqrt(1.0 + x * x);
}

ShiftResult thermal_high_t(double nbar, double eps,
                           const ClockParams& params) {
  check_nbar(nbar);
  if (eps == 0.0) {
    return ShiftResult{-params.eps_m() * nbar / 2.0, 0.0, 1.0, "high-T"};
  }
  const double x = 2.0 * eps * nbar;
  const double offset = -std::atan(x);
  // ε = ε_m ω_c t/4, so Δν/ν = φ/(ω_c t) = φ ε_m/(4ε).
  return ShiftResult{offset * params.eps_m() / (4.0 * eps), offset,
                     1.0 / std::sqrt(1.0 + x * x), "high-T"};
}

complexd semiclassical_offdiag(double mean_v2_over_c2, double omega_c_t,
                               double carrier) {
  if (!(mean_v2_over_c2 >= 0.0)) {
    throw UnphysicalParameters("mean squared velocity must be >= 0");
  }
  return std::exp(kI * (omega_c_t * mean_v2_over_c2 / 2.0 - carrier));
}

double thermal_mean_v2_over_c2(double nbar, const ClockParams& params) {
  check_nbar(nbar);
  return params.eps_m() * (2.0 * nbar + 1.0) / 2.0;
}

complexd squeezed_offdiag(double r, double theta, double carrier) {
  check_r(r);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const complexd w = ch * ch - std::exp(kI * theta) * (sh * sh);
  return std::exp(kI * (theta / 4.0 - carrier)) / std::sqrt(w);
}

double squeezed_visibility_exact(double r, double theta) {
  check_r(r);
  const double s = std::sin(theta / 2.0);
  const double sh2 = std::sinh(2.0 * r);
  return std::pow(1.0 + sh2 * sh2 * s * s, -0.25);
}

double squeezed_visibility_approx(double r, double theta) {
  check_r(r);
  const double sh2 = std::sinh(2.0 * r);
  return 1.0 - theta * theta * sh2 * sh2 / 16.0;
}

bool squeezed_approx_in_regime(double r, double theta) {
  check_r(r);
  return std::abs(theta) * std::cosh(2.0 * r) / 2.0 < 1.0;
}

complexd ground_state_offdiag(double eps_c, double omega_t, double carrier) {
  if (!(eps_c >= 0.0) || !(eps_c < 1.0)) {
    throw UnphysicalParameters("eps_c must lie in [0, 1)");
  }
  const double lambda = std::sqrt(1.0 - eps_c);
  const double zeta = -std::log1p(-eps_c) / 4.0;
  const double ch = std::cosh(zeta);
  const double sh = std::sinh(zeta);
  const complexd w =
      ch * ch - std::exp(-2.0 * kI * lambda * omega_t) * (sh * sh);
  return std::exp(kI * (omega_t * (1.0 - lambda) / 2.0 - carrier)) /
         std::sqrt(w);
}

double ground_state_visibility(double eps_c, double omega_t) {
  return std::abs(ground_state_offdiag(eps_c, omega_t));
}

double ground_state_visibility_approx(double eps_c, double omega_t) {
  const double s = std::sin(omega_t);
  return 1.0 - eps_c * eps_c * s * s / 16.0;
}

double ground_state_phase(double eps_c, double omega_t) {
  return -std::arg(ground_state_offdiag(eps_c, omega_t));
}

double ground_state_phase_series(double eps_c, double omega_t) {
  return -eps_c * omega_t / 4.0 -
         eps_c * eps_c * (omega_t / 16.0 - std::sin(2.0 * omega_t) / 32.0);
}

ShiftResult ground_state_shift(double eps_c, double omega_t,
                               const ClockParams& params) {
  const double eps_m = params.eps_m();
  // sin(2ωt)/(2ωt) → 1 as ωt → 0.
  const double sinc2 =
      omega_t == 0.0 ? 1.0 : std::sin(2.0 * omega_t) / (2.0 * omega_t);
  const double shift =
      -eps_m / 4.0 - eps_m * eps_c / 16.0 + eps_m * eps_c * sinc2 / 16.0;
  return ShiftResult{shift, shift * params.ratio() * omega_t,
                     ground_state_visibility(eps_c, omega_t), "first-order"};
}

double naive_projection_phase(double eps_c, double omega_t) {
  return -omega_t * eps_c / 4.0 +
         eps_c / (4.0 * kSqrt2) *
             std::sin(2.0 * omega_t * (1.0 - eps_c / 4.0));
}

double displaced_arg_offset(double beta) {
  check_beta(beta);
  return std::arg(complexd(2.0 - beta * beta, 2.0 * kSqrt2 * beta));
}

double qsods_protocol_phase(double beta, double eps_c, double omega_t) {
  check_beta(beta);
  const double s = std::sin(omega_t);
  const double denom = 2.0 + beta * beta;
  return -omega_t * eps_c / 4.0 + displaced_arg_offset(beta) -
         beta * eps_c * s * s / (kSqrt2 * denom) +
         beta * beta * eps_c * (1.0 - beta * beta / 2.0) *
             std::sin(2.0 * omega_t) / (8.0 * denom);
}

double qsods_constant_phase(double beta, double eps_c) {
  check_beta(beta);
  return -beta * eps_c / (2.0 * kSqrt2 * (2.0 + beta * beta));
}

double qsods_success_leading(double beta) {
  check_beta(beta);
  return (2.0 + beta * beta) / 4.0 * std::exp(-beta * beta / 2.0);
}

double qsods_success(double beta, double eps_c) {
  const double b2 = beta * beta;
  return qsods_success_leading(beta) *
         (1.0 - eps_c * b2 * (2.0 - b2) / (16.0 * (2.0 + b2)));
}

complexd offdiag_leading_displaced(double beta, double eps_c,
                                   double omega_t) {
  check_beta(beta);
  const double s = std::sin(omega_t);
  const double denom = 2.0 + beta * beta;
  const double x = omega_t * eps_c / 4.0 +
                   beta * eps_c * s * s / (kSqrt2 * denom) -
                   beta * beta * eps_c * (1.0 - beta * beta / 2.0) *
                       std::sin(2.0 * omega_t) / (8.0 * denom);
  return std::exp(-kI * displaced_arg_offset(beta)) * (1.0 + kI * x);
}

}  // namespace propertime::closed_forms
