#include <complex>

#include <benchmark/benchmark.h>

#include "propertime/closed_forms.hpp"
#include "propertime/dynamics.hpp"
#include "propertime/fock.hpp"
#include "propertime/params.hpp"
#include "propertime/protocols.hpp"

using namespace propertime;

namespace {
const ClockParams kP = ClockParams::dimensionless(1e-2, 50.0);
}

static void BM_squeeze_matrix(benchmark::State& state) {
  const fock::FockDim dim(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(fock::squeeze(std::polar(1.0, 0.3), dim));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_squeeze_matrix)->Arg(64)->Arg(128)->Arg(256)->Complexity();

static void BM_propagator_build_oracle(benchmark::State& state) {
  const fock::FockDim dim(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        dynamics::Propagators(kP, dim, dynamics::Variant::oracle));
}
BENCHMARK(BM_propagator_build_oracle)->Arg(64)->Arg(128)->Arg(256);

static void BM_apply_e_exact(benchmark::State& state) {
  const fock::FockDim dim(static_cast<int>(state.range(0)));
  const dynamics::Propagators props(kP, dim, dynamics::Variant::exact);
  const fock::Vector v = fock::squeezed_vacuum(0.8, 0.0, dim).amplitudes();
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(props.apply_e(t, v));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_apply_e_exact)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Complexity();

static void BM_thermal_point(benchmark::State& state) {
  const fock::FockDim dim(static_cast<int>(state.range(0)));
  const auto rho = fock::thermal_density(2.0, dim);
  const dynamics::Propagators props(kP, dim, dynamics::Variant::exact);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.01;
    benchmark::DoNotOptimize(dynamics::mixed_state_evolution(rho, props, t));
  }
}
BENCHMARK(BM_thermal_point)->Arg(64)->Arg(128)->Arg(256);

static void BM_ramsey_sequence(benchmark::State& state) {
  protocols::RamseyConfig cfg;
  cfg.params = kP;
  cfg.prep = protocols::PrepSpec::parse("squeezed:1.0");
  cfg.grid = protocols::linspace(0.0, 40.0, 65);
  cfg.dim = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(protocols::run_ramsey(cfg));
}
BENCHMARK(BM_ramsey_sequence)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_qsods_protocol(benchmark::State& state) {
  protocols::QsodsConfig cfg;
  cfg.params = ClockParams::dimensionless(1e-3, 50.0);
  cfg.beta = 1.0;
  cfg.dim = static_cast<int>(state.range(0));
  cfg.periods = 1;
  cfg.samples_per_period = 64;
  for (auto _ : state)
    benchmark::DoNotOptimize(protocols::run_qsods_protocol(cfg));
}
BENCHMARK(BM_qsods_protocol)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_closed_form_catalog(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    x += 1e-6;
    benchmark::DoNotOptimize(closed_forms::squeezed_visibility_exact(1.0, x));
    benchmark::DoNotOptimize(closed_forms::thermal_offdiag(2.0, x));
    benchmark::DoNotOptimize(closed_forms::qsods_protocol_phase(1.0, 1e-3, x));
  }
}
BENCHMARK(BM_closed_form_catalog);

BENCHMARK_MAIN();
