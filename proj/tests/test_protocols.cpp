#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "propertime/closed_forms.hpp"
#include "propertime/errors.hpp"
#include "propertime/protocols.hpp"

using namespace propertime;
namespace pr = protocols;
namespace cf = closed_forms;
using fock::complexd;

TEST_CASE("preparation spec parsing") {
  CHECK(pr::PrepSpec::parse("vacuum").kind == pr::PrepSpec::Kind::vacuum);
  const auto f = pr::PrepSpec::parse("fock:5");
  CHECK(f.kind == pr::PrepSpec::Kind::fock);
  CHECK(f.n == 5);
  const auto th = pr::PrepSpec::parse("thermal:2.5");
  CHECK(th.nbar == 2.5);
  CHECK(!th.pure());
  const auto sq = pr::PrepSpec::parse("squeezed:1.2,0.7");
  CHECK(sq.r == 1.2);
  CHECK(sq.theta == 0.7);
  CHECK(pr::PrepSpec::parse("squeezed:1.2").theta == 0.0);

  for (auto text : {"vacuum", "fock:5", "thermal:2.5", "squeezed:1.2,0.7"}) {
    const auto spec = pr::PrepSpec::parse(text);
    CHECK(pr::PrepSpec::parse(spec.str()).str() == spec.str());
  }

  CHECK_THROWS_AS(pr::PrepSpec::parse("coherent:1"), ConfigError);
  CHECK_THROWS_AS(pr::PrepSpec::parse("fock:x"), ConfigError);
  CHECK_THROWS_AS(pr::PrepSpec::parse("fock:2.5"), ConfigError);
  CHECK_THROWS_AS(pr::PrepSpec::parse("fock:-1"), ConfigError);
  CHECK_THROWS_AS(pr::PrepSpec::parse("thermal:-2"), ConfigError);
  CHECK_THROWS_AS(pr::PrepSpec::parse("vacuum:3"), ConfigError);

  CHECK(pr::PrepSpec::parse("vacuum").adaptive_dim() == 128);
  CHECK(pr::PrepSpec::parse("squeezed:2.0").adaptive_dim() > 128);
}

TEST_CASE("linspace endpoints are exact") {
  const auto g = pr::linspace(0.0, 10.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 10.0);
  CHECK(g[2] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_AS(pr::linspace(0.0, 1.0, 1), UnphysicalParameters);
  CHECK_THROWS_AS(pr::linspace(1.0, 0.0, 4), UnphysicalParameters);
}

TEST_CASE("trivial Ramsey run keeps unit visibility and zero phase") {
  pr::RamseyConfig cfg;
  cfg.params = ClockParams::dimensionless(0.0, 10.0);
  cfg.grid = pr::linspace(0.0, 20.0, 9);
  const auto out = pr::run_ramsey(cfg);
  REQUIRE(out.omega_t.size() == 9);
  CHECK(out.dim == 128);
  CHECK(out.pure_prep);
  CHECK(out.min_visibility == doctest::Approx(1.0).epsilon(1e-12));
  for (double ph : out.phase_unwrapped) CHECK(std::abs(ph) < 1e-12);
  CHECK(out.fit_valid);
  CHECK(std::abs(out.fit.fractional_shift) < 1e-13);
  CHECK(out.mean_success == 1.0);
  CHECK(out.flagged.empty());
}

TEST_CASE("Ramsey on squeezed input matches the number-diagonal closed form") {
  pr::RamseyConfig cfg;
  cfg.params = ClockParams::dimensionless(1e-2, 50.0);
  cfg.prep = pr::PrepSpec::parse("squeezed:1.0");
  cfg.variant = dynamics::Variant::diagonal_sods;
  cfg.grid = pr::linspace(0.0, 40.0, 17);
  cfg.dim = 128;
  const auto out = pr::run_ramsey(cfg);
  for (std::size_t i = 0; i < out.omega_t.size(); ++i) {
    const complexd closed =
        cf::squeezed_offdiag(1.0, cfg.params.eps_c() * out.omega_t[i]);
    CHECK(std::abs(2.0 * out.rho_eg[i] - closed) < 1e-11);
    CHECK(out.visibility[i] ==
          doctest::Approx(std::abs(closed)).epsilon(1e-9));
  }
}

TEST_CASE("thermal Ramsey fit recovers the ensemble frequency shift") {
  pr::RamseyConfig cfg;
  cfg.params = ClockParams::dimensionless(1e-3, 100.0);
  cfg.prep = pr::PrepSpec::parse("thermal:1.0");
  cfg.variant = dynamics::Variant::diagonal_sods;
  cfg.grid = pr::linspace(0.0, 10.0, 21);
  cfg.dim = 96;
  const auto out = pr::run_ramsey(cfg);
  CHECK(!out.pure_prep);
  REQUIRE(out.fit_valid);
  // −ε_m(2n̄+1)/4 with n̄ = 1.
  const double expected = -cfg.params.eps_m() * 3 / 4;
  CHECK(out.fit.fractional_shift ==
        doctest::Approx(expected).epsilon(1e-3));
  CHECK(out.fit.fractional_shift < 0.0);

  // The two mixed-state paths give the same series.
  cfg.mixed_path = dynamics::MixedPath::full_density;
  const auto full = pr::run_ramsey(cfg);
  for (std::size_t i = 0; i < out.rho_eg.size(); ++i)
    CHECK(std::abs(out.rho_eg[i] - full.rho_eg[i]) < 1e-12);
}

TEST_CASE("Ramsey grid validation") {
  pr::RamseyConfig cfg;
  cfg.params = ClockParams::dimensionless(1e-3, 10.0);
  cfg.grid = {};
  CHECK_THROWS_AS(pr::run_ramsey(cfg), InsufficientData);
  cfg.grid = {0.0, 2.0, 1.0};
  CHECK_THROWS_AS(pr::run_ramsey(cfg), UnphysicalParameters);
  cfg.grid = {-1.0, 0.0, 1.0};
  CHECK_THROWS_AS(pr::run_ramsey(cfg), UnphysicalParameters);
  cfg.grid = {0.0, 1.0};
  cfg.prep = pr::PrepSpec::parse("fock:200");
  cfg.dim = 64;
  CHECK_THROWS_AS(pr::run_ramsey(cfg), TruncationOverflow);
}

TEST_CASE("entanglement witness tracks the visibility deficit") {
  pr::RamseyConfig cfg;
  cfg.params = ClockParams::dimensionless(1e-2, 50.0);
  cfg.prep = pr::PrepSpec::parse("squeezed:1.0");
  cfg.grid = pr::linspace(0.0, 30.0, 13);
  cfg.dim = 128;
  const auto out = pr::run_ramsey(cfg);
  const auto wit = pr::entanglement_witness(out);
  REQUIRE(wit.one_minus_v.size() == out.omega_t.size());
  double max_w = 0.0;
  for (std::size_t i = 0; i < wit.one_minus_v.size(); ++i) {
    CHECK(wit.one_minus_v[i] >= -1e-12);
    CHECK(wit.clock_purity[i] ==
          doctest::Approx((1 + out.visibility[i] * out.visibility[i]) / 2)
              .epsilon(1e-12));
    max_w = std::max(max_w, wit.one_minus_v[i]);
  }
  CHECK(max_w > 1e-4);  // entanglement leaves a visible dip at these settings

  pr::RamseyConfig mixed = cfg;
  mixed.prep = pr::PrepSpec::parse("thermal:1.0");
  CHECK_THROWS_AS(pr::entanglement_witness(pr::run_ramsey(mixed)),
                  InvalidWitnessInput);
}

TEST_CASE("state-dependent displacement branches are inverse unitaries") {
  const fock::FockDim dim(48);
  const auto [dg, de] = pr::state_dependent_displacement(1.5, dim);
  CHECK(dg.kind() == fock::OperatorKind::unitary);
  const fock::Matrix prod = dg.matrix() * de.matrix();
  CHECK((prod - fock::Matrix::Identity(48, 48)).cwiseAbs().maxCoeff() < 1e-12);
  // Branch sign convention: the excited branch displaces momentum downward.
  const fock::Vector ve = de.matrix() * fock::vacuum(dim).amplitudes();
  CHECK(fock::expectation(fock::momentum(dim).matrix(), ve).real() ==
        doctest::Approx(-1.5).epsilon(1e-10));
}

TEST_CASE("projected protocol reproduces its closed-form constants") {
  pr::QsodsConfig cfg;
  cfg.params = ClockParams::dimensionless(1e-3, 50.0);
  cfg.beta = 1.0;
  cfg.dim = 64;
  cfg.periods = 2;
  cfg.samples_per_period = 64;
  const auto out = pr::run_qsods_protocol(cfg);
  REQUIRE(out.omega_t.size() ==
          static_cast<std::size_t>(cfg.periods * cfg.samples_per_period + 1));
  CHECK(out.flagged.empty());
  CHECK(out.mean_success ==
        doctest::Approx(cf::qsods_success(1.0, 1e-3)).epsilon(5e-3));
  REQUIRE(out.average_valid);
  const double offset =
      out.time_averaged_phase - cf::displaced_arg_offset(cfg.beta);
  CHECK(offset ==
        doctest::Approx(cf::qsods_constant_phase(1.0, 1e-3)).epsilon(0.1));
  // Conditional coherence stays near unit visibility at leading order.
  for (double v : out.visibility) CHECK(v > 0.99);
}

TEST_CASE("projected protocol configuration guards") {
  pr::QsodsConfig cfg;
  cfg.params = ClockParams::dimensionless(1e-3, 50.0);
  cfg.dim = 64;
  cfg.variant = dynamics::Variant::diagonal_sods;
  CHECK_THROWS_AS(pr::run_qsods_protocol(cfg), ConfigError);
  cfg.variant = dynamics::Variant::exact;
  cfg.periods = 0;
  CHECK_THROWS_AS(pr::run_qsods_protocol(cfg), UnphysicalParameters);
  cfg.periods = 1;
  cfg.samples_per_period = 16;
  CHECK_THROWS_AS(pr::run_qsods_protocol(cfg), InsufficientData);
  cfg.samples_per_period = 64;
  cfg.beta = 20.0;  // displaced vacuum cannot fit in 64 levels
  CHECK_THROWS_AS(pr::run_qsods_protocol(cfg), TruncationOverflow);
  cfg.beta = 1.0;
  cfg.projector = pr::Projector::custom;
  cfg.custom_projector = fock::Vector::Zero(8);  // wrong dim and zero norm
  CHECK_THROWS_AS(pr::run_qsods_protocol(cfg), UnphysicalParameters);
  fock::Vector proj = fock::Vector::Zero(8);
  proj[0] = 1.0;
  cfg.custom_projector = proj;
  CHECK_THROWS_AS(pr::run_qsods_protocol(cfg), DimensionMismatch);
}

TEST_CASE("detrended time average over integer periods") {
  const int spp = 64;
  auto sample = [&](int periods, double sin_amp, double cos_amp) {
    const auto t = pr::linspace(0.0, 2 * std::numbers::pi * periods,
                                spp * periods + 1);
    std::vector<double> series;
    for (double ti : t)
      series.push_back(0.37 - 4e-3 * ti + sin_amp * std::sin(2 * ti) +
                       cos_amp * std::cos(2 * ti));
    return std::make_pair(t, series);
  };

  // Slope and cosine components drop out exactly; the constant survives.
  const auto [tc, sc] = sample(2, 0.0, 0.05);
  CHECK(pr::time_average_phase(tc, sc) ==
        doctest::Approx(0.37).epsilon(1e-10));

  // Sine components bias the fitted slope; the residual decays as 1/window.
  const auto [t2, s2] = sample(2, 0.05, 0.0);
  const auto [t8, s8] = sample(8, 0.05, 0.0);
  const double dev2 = std::abs(pr::time_average_phase(t2, s2) - 0.37);
  const double dev8 = std::abs(pr::time_average_phase(t8, s8) - 0.37);
  CHECK(dev2 < 1.6e-2);
  CHECK(dev8 < 4e-3);
  CHECK(dev8 < dev2 / 3);

  const auto& t = t2;
  const auto& series = s2;
  CHECK_THROWS_AS(pr::time_average_phase(t, series, 3), InsufficientData);
  auto short_t = pr::linspace(0.0, 5.0, 200);  // not an integer period span
  std::vector<double> short_s(short_t.size(), 1.0);
  CHECK_THROWS_AS(pr::time_average_phase(short_t, short_s),
                  InsufficientData);
  auto coarse_t = pr::linspace(0.0, 2 * std::numbers::pi, 17);
  std::vector<double> coarse_s(coarse_t.size(), 1.0);
  CHECK_THROWS_AS(pr::time_average_phase(coarse_t, coarse_s),
                  InsufficientData);
}
