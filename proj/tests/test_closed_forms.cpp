#include <cmath>
#include <complex>
#include <numbers>

#include <doctest.h>

#include "propertime/closed_forms.hpp"
#include "propertime/errors.hpp"
#include "propertime/params.hpp"

using namespace propertime;
namespace cf = closed_forms;
using fock::complexd;

TEST_CASE("level-resolved clock frequency") {
  const auto p = ClockParams::al_plus();
  CHECK(cf::clock_frequency_factor(0, p) ==
        doctest::Approx(1.0 - p.eps_m() / 4).epsilon(1e-15));
  CHECK(cf::clock_frequency_factor(3, p) ==
        doctest::Approx(1.0 - 7 * p.eps_m() / 4).epsilon(1e-15));
  CHECK(cf::shifted_clock_frequency(0, p) ==
        doctest::Approx(p.omega_c_si() * (1.0 - p.eps_m() / 4))
            .epsilon(1e-15));
  CHECK_THROWS_AS(
      cf::shifted_clock_frequency(0, ClockParams::dimensionless(1e-3, 10)),
      UnphysicalParameters);
  CHECK_THROWS_AS(cf::clock_frequency_factor(-1, p), UnphysicalParameters);
}

TEST_CASE("second-order Doppler shifts for the standard preparations") {
  const auto p = ClockParams::al_plus();
  const auto vac = cf::vacuum_sods(p);
  CHECK(vac.fractional_shift ==
        doctest::Approx(-p.eps_m() / 4).epsilon(1e-15));
  CHECK(vac.fractional_shift == doctest::Approx(-8.2277e-19).epsilon(1e-4));
  CHECK(vac.regime == "first-order");

  CHECK(cf::thermal_sods(2.0, p).fractional_shift ==
        doctest::Approx(-p.eps_m() * 5 / 4).epsilon(1e-15));
  CHECK(cf::thermal_sods(0.0, p).fractional_shift ==
        doctest::Approx(vac.fractional_shift).epsilon(1e-15));

  const auto sq = cf::squeezed_sods(2.26, p);
  CHECK(sq.fractional_shift ==
        doctest::Approx(-p.eps_m() * std::cosh(4.52) / 4).epsilon(1e-15));
  CHECK(sq.fractional_shift == doctest::Approx(-3.7784e-17).epsilon(1e-4));
  CHECK_THROWS_AS(cf::squeezed_sods(-1.0, p), UnphysicalParameters);
  CHECK_THROWS_AS(cf::thermal_sods(-0.2, p), UnphysicalParameters);
}

TEST_CASE("thermal coherence against a brute-force geometric sum") {
  const double nbar = 1.3, eps = 0.07;
  complexd sum = 0.0;
  const double q = nbar / (nbar + 1.0);
  for (int n = 0; n < 4000; ++n)
    sum += (1.0 - q) * std::pow(q, n) * std::polar(1.0, eps * (2 * n + 1));
  const complexd closed = cf::thermal_offdiag(nbar, eps);
  CHECK(std::abs(closed - sum) < 1e-12);
  CHECK(std::abs(closed) ==
        doctest::Approx(cf::thermal_visibility(nbar, eps)).epsilon(1e-13));
  CHECK(std::arg(closed) ==
        doctest::Approx(cf::thermal_phase_correction(nbar, eps))
            .epsilon(1e-13));
}

TEST_CASE("thermal reference values") {
  CHECK(cf::thermal_visibility(1.0, 0.1) ==
        doctest::Approx(0.962369108664265).epsilon(1e-12));
  CHECK(cf::thermal_phase_correction(1.0, 0.1) ==
        doctest::Approx(0.29237765558309536).epsilon(1e-12));
  CHECK(cf::thermal_visibility(2.0, 0.1) ==
        doctest::Approx(0.8983159500051535).epsilon(1e-12));
  CHECK(cf::thermal_visibility(1.0, 0.0) == doctest::Approx(1.0));
  CHECK(cf::thermal_phase_correction(1.0, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(cf::thermal_visibility(-1.0, 0.1), UnphysicalParameters);
  // The closed form holds past ε = π/2 as well.
  {
    const double eps = 1.6;
    complexd sum = 0.0;
    for (int n = 0; n < 4000; ++n)
      sum += 0.5 * std::pow(0.5, n) * std::polar(1.0, eps * (2 * n + 1));
    CHECK(std::abs(cf::thermal_offdiag(1.0, eps) - sum) < 1e-12);
  }
}

TEST_CASE("high-temperature limit approaches the exact thermal form") {
  const auto p = ClockParams::dimensionless(1e-3, 100.0);
  const double nbar = 50.0, eps = 0.01;
  const complexd ht = cf::thermal_offdiag_high_t(nbar, eps);
  const complexd exact = cf::thermal_offdiag(nbar, eps);
  CHECK(std::abs(std::abs(ht) / std::abs(exact) - 1.0) < 0.02);
  CHECK(std::abs(std::arg(ht) - std::arg(exact)) <
        0.02 * std::abs(std::arg(exact)));
  CHECK(std::abs(ht) ==
        doctest::Approx(1.0 / std::sqrt(1.0 + 4 * eps * eps * nbar * nbar))
            .epsilon(1e-13));
  const auto res = cf::thermal_high_t(nbar, eps, p);
  CHECK(res.regime == "high-T");
  CHECK(res.visibility == doctest::Approx(std::abs(ht)).epsilon(1e-13));
}

TEST_CASE("semiclassical model keeps unit visibility") {
  const complexd c = cf::semiclassical_offdiag(3e-6, 2.0);
  CHECK(std::abs(c) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::arg(c) == doctest::Approx(3e-6).epsilon(1e-9));
  // The entangled thermal state loses visibility at the matched mean shift.
  CHECK(cf::thermal_visibility(1.0, 0.1) < 1.0);
}

TEST_CASE("squeezed-state coherence and its visibility approximation") {
  const double r = 1.0, theta = 0.3;
  const complexd c = cf::squeezed_offdiag(r, theta);
  const double s2 = std::sinh(2 * r) * std::sinh(2 * r);
  const double vex =
      std::pow(1.0 + s2 * std::pow(std::sin(theta / 2), 2), -0.25);
  CHECK(std::abs(c) == doctest::Approx(vex).epsilon(1e-13));
  CHECK(cf::squeezed_visibility_exact(r, theta) ==
        doctest::Approx(vex).epsilon(1e-13));
  CHECK(cf::squeezed_visibility_approx(r, theta) ==
        doctest::Approx(1.0 - theta * theta / 16 * s2).epsilon(1e-13));
  CHECK(cf::squeezed_visibility_exact(r, 0.0) == doctest::Approx(1.0));

  // Half-visibility benchmark: sinh²(2r)sin²(Θ/2) = 15 gives V = 1/2.
  const double theta_half = 2 * std::asin(std::sqrt(15.0) / std::sinh(2.4));
  CHECK(cf::squeezed_visibility_exact(1.2, theta_half) ==
        doctest::Approx(0.5).epsilon(1e-12));

  CHECK(cf::squeezed_approx_in_regime(1.0, 0.1));
  CHECK(!cf::squeezed_approx_in_regime(2.26, 0.0626));
}

TEST_CASE("ion-scale squeezed visibility after one second") {
  const auto al = ClockParams::al_plus();
  const double r = 2.26;
  CHECK(al.theta(1.0) == doctest::Approx(2.321811e-2).epsilon(1e-5));
  CHECK(cf::squeezed_visibility_exact(r, al.theta(1.0)) ==
        doctest::Approx(0.939404).epsilon(2e-5));
  CHECK(cf::squeezed_visibility_approx(r, al.theta(1.0)) ==
        doctest::Approx(0.928978).epsilon(2e-5));

  const auto b = ClockParams::b_plus();
  CHECK(cf::squeezed_visibility_exact(r, b.theta(1.0)) ==
        doctest::Approx(0.755957).epsilon(2e-5));
  CHECK(cf::squeezed_visibility_approx(r, b.theta(1.0)) ==
        doctest::Approx(0.484320).epsilon(2e-5));
}

TEST_CASE("ground-state coherence, phase series, and shift") {
  const double eps = 1e-3;
  CHECK(std::abs(cf::ground_state_offdiag(eps, 0.0) - complexd(1.0)) < 1e-15);
  for (double t : {0.7, 2.0, 6.4}) {
    const complexd c = cf::ground_state_offdiag(eps, t);
    CHECK(std::abs(c) ==
          doctest::Approx(cf::ground_state_visibility(eps, t)).epsilon(1e-13));
    CHECK(cf::ground_state_phase(eps, t) ==
          doctest::Approx(-std::arg(c)).epsilon(1e-12));
    CHECK(std::abs(cf::ground_state_phase(eps, t) -
                   cf::ground_state_phase_series(eps, t)) < 1e-8);
    CHECK(std::abs(cf::ground_state_visibility(eps, t) -
                   cf::ground_state_visibility_approx(eps, t)) <
          eps * eps * eps);
  }
  // Clock runs slow: the offset phase decreases with time.
  CHECK(cf::ground_state_phase(1e-2, 10.0) < 0.0);

  const auto p = ClockParams::dimensionless(eps, 100.0);
  const auto shift = cf::ground_state_shift(eps, 1e-9, p);
  CHECK(shift.fractional_shift ==
        doctest::Approx(-p.eps_m() / 4).epsilon(1e-6));
  CHECK_THROWS_AS(cf::ground_state_offdiag(1.2, 1.0), UnphysicalParameters);
}

TEST_CASE("bare projection phase without displacement") {
  CHECK(cf::naive_projection_phase(1e-3, std::numbers::pi / 4) ==
        doctest::Approx(-1.957285918331917e-05).epsilon(1e-10));
  CHECK(cf::naive_projection_phase(1e-3, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("displaced-projection protocol constants") {
  CHECK(cf::displaced_arg_offset(0.0) == doctest::Approx(0.0));
  const double beta = 1.0;
  CHECK(cf::displaced_arg_offset(beta) ==
        doctest::Approx(std::arg(complexd(2.0 - beta * beta,
                                          2 * std::sqrt(2.0) * beta)))
            .epsilon(1e-14));

  const double eps = 1e-3;
  CHECK(cf::qsods_constant_phase(1.0, eps) ==
        doctest::Approx(-0.11785113019775791 * eps).epsilon(1e-12));
  // β = 1 and β = 2 sit on the same level curve of β/(2+β²).
  CHECK(cf::qsods_constant_phase(2.0, eps) ==
        doctest::Approx(cf::qsods_constant_phase(1.0, eps)).epsilon(1e-13));
  // Extremal displacement β = √2.
  const double ext = std::abs(cf::qsods_constant_phase(std::sqrt(2.0), eps));
  for (double b : {0.3, 0.9, 1.7, 2.5})
    CHECK(std::abs(cf::qsods_constant_phase(b, eps)) < ext);

  CHECK(cf::qsods_success_leading(2.0) ==
        doctest::Approx(0.20300292485491905).epsilon(1e-12));
  CHECK(cf::qsods_success_leading(0.0) == doctest::Approx(0.5));
  CHECK(std::abs(cf::qsods_success(2.0, eps) -
                 cf::qsods_success_leading(2.0)) < 1e-3);

  // At ωt multiples of π the oscillating terms vanish.
  const double t = std::numbers::pi;
  CHECK(cf::qsods_protocol_phase(beta, eps, t) ==
        doctest::Approx(-t * eps / 4 + cf::displaced_arg_offset(beta))
            .epsilon(1e-9));

  const complexd lead = cf::offdiag_leading_displaced(beta, eps, 2.1);
  CHECK(std::abs(std::abs(lead) - 1.0) < 1e-4);
  CHECK_THROWS_AS(cf::qsods_constant_phase(-0.5, eps), UnphysicalParameters);
}
