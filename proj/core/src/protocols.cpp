#include "propertime/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "propertime/errors.hpp"

namespace propertime::protocols {

using fock::complexd;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr double kSuccessFloor = 1e-6;

double parse_number(const std::string& text, const char* what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(std::string(what) + ": cannot parse '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ConfigError(std::string(what) + ": cannot parse '" + text + "'");
  }
  return value;
}

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw InsufficientData("empty ωt grid");
  if (!std::isfinite(grid.front()) || grid.front() < 0.0) {
    throw UnphysicalParameters("ωt grid must start at a finite value ≥ 0");
  }
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] <= grid[i - 1]) {
      throw UnphysicalParameters("ωt grid must be strictly increasing");
    }
  }
}

fock::Vector make_pure_prep(const PrepSpec& prep, fock::FockDim dim) {
  switch (prep.kind) {
    case PrepSpec::Kind::vacuum:
      return fock::vacuum(dim).amplitudes();
    case PrepSpec::Kind::fock:
      if (prep.n >= fock::tail_start(dim.value())) {
        throw TruncationOverflow("fock level reaches the truncation tail window",
                                 fock::adaptive_dim_fock(prep.n));
      }
      return fock::fock_state(prep.n, dim).amplitudes();
    case PrepSpec::Kind::squeezed:
      return fock::squeezed_vacuum(prep.r, prep.theta, dim).amplitudes();
    case PrepSpec::Kind::thermal:
      break;
  }
  throw UnphysicalParameters("thermal preparation is not a pure state");
}

// Fit, detrended time average, min visibility. Shared by both protocols.
void finish_summary(ProtocolResult* out, const ClockParams& params,
                    int window) {
  if (out->omega_t.size() >= 3) {
    out->fit = analysis::fit_fractional_shift(out->omega_t,
                                              out->phase_unwrapped, params);
    out->fit_valid = true;
  }
  try {
    out->time_averaged_phase =
        time_average_phase(out->omega_t, out->phase_unwrapped, window);
    out->average_valid = true;
  } catch (const InsufficientData&) {
    out->average_valid = false;
  }
  out->min_visibility =
      *std::min_element(out->visibility.begin(), out->visibility.end());
}

double trapezoid_mean(const std::vector<double>& values) {
  const std::size_t n = values.size();
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < n; ++i) sum += values[i];
  return sum / static_cast<double>(n - 1);
}

}  // namespace

PrepSpec PrepSpec::parse(const std::string& text) {
  PrepSpec spec;
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (name == "vacuum") {
    if (!arg.empty()) throw ConfigError("vacuum takes no argument");
    spec.kind = Kind::vacuum;
  } else if (name == "fock") {
    spec.kind = Kind::fock;
    const double n = parse_number(arg, "fock level");
    if (n < 0.0 || n != std::floor(n)) {
      throw ConfigError("fock level must be a non-negative integer");
    }
    spec.n = static_cast<int>(n);
  } else if (name == "thermal") {
    spec.kind = Kind::thermal;
    spec.nbar = parse_number(arg, "thermal n̄");
    if (spec.nbar < 0.0) throw ConfigError("thermal n̄ must be ≥ 0");
  } else if (name == "squeezed") {
    spec.kind = Kind::squeezed;
    const std::size_t comma = arg.find(',');
    spec.r = parse_number(arg.substr(0, comma), "squeezing r");
    if (comma != std::string::npos) {
      spec.theta = parse_number(arg.substr(comma + 1), "squeezing angle");
    }
  } else {
    throw ConfigError("unknown preparation '" + text +
                      "' (vacuum | fock:N | thermal:NBAR | squeezed:R[,THETA])");
  }
  return spec;
}

std::string PrepSpec::str() const {
  char buf[64];
  switch (kind) {
    case Kind::vacuum:
      return "vacuum";
    case Kind::fock:
      std::snprintf(buf, sizeof(buf), "fock:%d", n);
      return buf;
    case Kind::thermal:
      std::snprintf(buf, sizeof(buf), "thermal:%g", nbar);
      return buf;
    case Kind::squeezed:
      std::snprintf(buf, sizeof(buf), "squeezed:%g,%g", r, theta);
      return buf;
  }
  return "vacuum";
}

int PrepSpec::adaptive_dim(double tol) const {
  switch (kind) {
    case Kind::vacuum:
      return fock::adaptive_dim_fock(0);
    case Kind::fock:
      return fock::adaptive_dim_fock(n);
    case Kind::thermal:
      return fock::adaptive_dim_thermal(nbar, tol);
    case Kind::squeezed:
      return fock::adaptive_dim_squeezed(r, tol);
  }
  return fock::adaptive_dim_fock(0);
}

std::vector<double> linspace(double start, double stop, int count) {
  if (count < 2) throw UnphysicalParameters("linspace needs at least 2 points");
  if (!std::isfinite(start) || !std::isfinite(stop) || stop <= start) {
    throw UnphysicalParameters("linspace needs finite stop > start");
  }
  std::vector<double> out(static_cast<std::size_t>(count));
  const double step = (stop - start) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = start + step * i;
  out.back() = stop;
  return out;
}

ProtocolResult run_ramsey(const RamseyConfig& config) {
  validate_grid(config.grid);
  const int dim_value =
      config.dim > 0 ? fock::FockDim(config.dim).value() : config.prep.adaptive_dim();
  const fock::FockDim dim(dim_value);
  dynamics::Propagators props(config.params, dim, config.variant);

  ProtocolResult out;
  out.omega_t = config.grid;
  out.dim = dim_value;
  out.pure_prep = config.prep.pure();
  const std::size_t npts = config.grid.size();
  out.rho_eg.reserve(npts);
  out.visibility.reserve(npts);
  out.success_prob.assign(npts, 1.0);
  std::vector<double> raw_phase;
  raw_phase.reserve(npts);

  if (config.prep.pure()) {
    const auto initial =
        dynamics::ramsey_initial(fock::MotionalState(make_pure_prep(config.prep, dim)));
    for (double t : config.grid) {
      const auto reduced =
          dynamics::reduce_to_clock(dynamics::evolve(initial, props, t));
      out.rho_eg.push_back(reduced.rho_eg);
      out.visibility.push_back(reduced.visibility);
      raw_phase.push_back(-reduced.phase);
    }
  } else {
    const fock::MotionalDensity rho_m = fock::thermal_density(config.prep.nbar, dim);
    for (double t : config.grid) {
      const auto reduced =
          dynamics::mixed_state_evolution(rho_m, props, t, config.mixed_path);
      out.rho_eg.push_back(reduced.rho_eg);
      out.visibility.push_back(reduced.visibility);
      raw_phase.push_back(-reduced.phase);
    }
  }

  out.phase_unwrapped = analysis::unwrap_phase(raw_phase);
  finish_summary(&out, config.params, 1);
  return out;
}

WitnessSeries entanglement_witness(const ProtocolResult& result) {
  if (!result.pure_prep) {
    throw InvalidWitnessInput(
        "witness needs a pure motional preparation; mixed-state contrast "
        "loss is classical");
  }
  WitnessSeries w;
  w.one_minus_v.reserve(result.visibility.size());
  w.clock_purity.reserve(result.visibility.size());
  for (double v : result.visibility) {
    w.one_minus_v.push_back(1.0 - v);
    w.clock_purity.push_back(0.5 * (1.0 + v * v));
  }
  return w;
}

std::pair<fock::Operator, fock::Operator> state_dependent_displacement(
    double beta, fock::FockDim dim) {
  if (!std::isfinite(beta)) throw UnphysicalParameters("β must be finite");
  return {fock::displacement_x(-beta, dim), fock::displacement_x(beta, dim)};
}

ProtocolResult run_qsods_protocol(const QsodsConfig& config) {
  if (config.variant != dynamics::Variant::exact &&
      config.variant != dynamics::Variant::oracle) {
    throw ConfigError(
        "projected protocol needs a full propagator (exact or oracle)");
  }
  if (config.periods < 1) {
    throw UnphysicalParameters("averaging window must cover ≥ 1 trap period");
  }
  if (config.samples_per_period < 32) {
    throw InsufficientData("need at least 32 samples per trap period");
  }
  const fock::FockDim dim(config.dim);
  dynamics::Propagators props(config.params, dim, config.variant);
  const auto [disp_g, disp_e] = state_dependent_displacement(config.beta, dim);

  fock::Vector proj;
  switch (config.projector) {
    case Projector::plus01:
      proj = (fock::fock_state(0, dim).amplitudes() +
              fock::fock_state(1, dim).amplitudes()) *
             kInvSqrt2;
      break;
    case Projector::plus02:
      proj = (fock::fock_state(0, dim).amplitudes() +
              fock::fock_state(2, dim).amplitudes()) *
             kInvSqrt2;
      break;
    case Projector::custom:
      proj = fock::MotionalState(config.custom_projector).amplitudes();
      if (proj.size() != dim.value()) {
        throw DimensionMismatch("custom projector does not match dim");
      }
      break;
  }

  const fock::Vector vac = fock::vacuum(dim).amplitudes();
  {
    // The displaced branches are coherent states with n̄ = β²/2. Demand the
    // mean plus five Poisson widths below the tail a priori: for strong
    // over-displacement the truncated generator reflects off the boundary
    // and yields a normalized but wrong state whose tail weight can be
    // deceptively small, so the occupancy bound cannot be replaced by the
    // a posteriori tail check (which stays as a backstop).
    const double nb = config.beta * config.beta / 2.0;
    const double need = nb + 5.0 * std::sqrt(nb + 1.0);
    if (need >= fock::tail_start(dim.value()) ||
        fock::tail_norm(disp_g.matrix() * vac) > 1e-9) {
      const int required =
          std::max(2 * dim.value(), static_cast<int>(need * 10.0 / 9.0) + 2);
      throw TruncationOverflow("displaced vacuum reaches the truncation tail",
                               required);
    }
  }

  ProtocolResult out;
  out.omega_t =
      linspace(0.0, kTwoPi * config.periods,
               config.periods * config.samples_per_period + 1);
  out.dim = dim.value();
  out.pure_prep = true;
  const std::size_t npts = out.omega_t.size();
  out.rho_eg.reserve(npts);
  out.visibility.reserve(npts);
  out.success_prob.reserve(npts);
  std::vector<double> raw_phase;
  raw_phase.reserve(npts);

  for (std::size_t i = 0; i < npts; ++i) {
    const double t = out.omega_t[i];
    const fock::Vector wg = disp_g.matrix() * props.apply_g(t, vac);
    const fock::Vector we = disp_e.matrix() * props.apply_e(t, vac);
    const complexd g_amp = proj.dot(wg) * kInvSqrt2;
    const complexd e_amp = proj.dot(we) * kInvSqrt2;
    const double success = std::norm(g_amp) + std::norm(e_amp);
    out.success_prob.push_back(success);
    if (success < kSuccessFloor) out.flagged.push_back(i);
    const complexd eg =
        success > 0.0 ? e_amp * std::conj(g_amp) / success : complexd(0.0);
    out.rho_eg.push_back(eg);
    out.visibility.push_back(std::min(2.0 * std::abs(eg), 1.0));
    raw_phase.push_back(eg == complexd(0.0) ? 0.0 : -std::arg(eg));
  }

  out.phase_unwrapped = analysis::unwrap_phase(raw_phase);
  finish_summary(&out, config.params, config.periods);
  out.mean_success = trapezoid_mean(out.success_prob);
  return out;
}

double time_average_phase(const std::vector<double>& omega_t,
                          const std::vector<double>& phase, int window) {
  if (window < 1) throw UnphysicalParameters("window must be ≥ 1 period");
  if (omega_t.size() != phase.size()) {
    throw DimensionMismatch("ωt and phase series differ in length");
  }
  const std::size_t n = omega_t.size();
  if (n < 3) throw InsufficientData("time average needs at least 3 samples");
  const double span = omega_t.back() - omega_t.front();
  const double periods = span / kTwoPi;
  const double k = std::round(periods);
  if (k + 0.5 < window ||
      std::abs(periods - k) > 1e-9 * std::max(1.0, periods)) {
    throw InsufficientData(
        "time average needs an integer number of trap periods covering the "
        "window");
  }
  if (static_cast<double>(n - 1) < 32.0 * k) {
    throw InsufficientData("time average needs ≥ 32 samples per period");
  }
  const double h = span / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(omega_t[i] - omega_t[i - 1] - h) > 1e-9 * h) {
      throw InsufficientData("time average needs a uniform grid");
    }
  }
  const auto fit = analysis::fit_line(omega_t, phase);
  std::vector<double> detrended(n);
  for (std::size_t i = 0; i < n; ++i) {
    detrended[i] = phase[i] - fit.slope * omega_t[i];
  }
  return trapezoid_mean(detrended);
}

}  // namespace propertime::protocols
