#include "propertime/sweep.hpp"

#include <cmath>
#include <cstdio>

#include "propertime/closed_forms.hpp"
#include "propertime/errors.hpp"

namespace propertime::sweep {
namespace {

struct NameEntry {
  const char* name;
  Quantity quantity;
};

constexpr NameEntry kNames[] = {
    {"squeezed_visibility_exact", Quantity::squeezed_visibility_exact},
    {"squeezed_visibility_approx", Quantity::squeezed_visibility_approx},
    {"ground_state_visibility", Quantity::ground_state_visibility},
    {"ground_state_visibility_approx", Quantity::ground_state_visibility_approx},
    {"ground_state_phase", Quantity::ground_state_phase},
    {"thermal_visibility", Quantity::thermal_visibility},
    {"thermal_phase", Quantity::thermal_phase},
    {"naive_phase", Quantity::naive_phase},
    {"qsods_phase", Quantity::qsods_phase},
    {"qsods_offset", Quantity::qsods_offset},
    {"qsods_success", Quantity::qsods_success},
};

double evaluate(Quantity q, const SweepRow& p) {
  namespace cf = closed_forms;
  const double theta = p.eps_c * p.omega_t;
  switch (q) {
    case Quantity::squeezed_visibility_exact:
      return cf::squeezed_visibility_exact(p.r, theta);
    case Quantity::squeezed_visibility_approx:
      return cf::squeezed_visibility_approx(p.r, theta);
    case Quantity::ground_state_visibility:
      return cf::ground_state_visibility(p.eps_c, p.omega_t);
    case Quantity::ground_state_visibility_approx:
      return cf::ground_state_visibility_approx(p.eps_c, p.omega_t);
    case Quantity::ground_state_phase:
      return cf::ground_state_phase(p.eps_c, p.omega_t);
    case Quantity::thermal_visibility:
      return cf::thermal_visibility(p.nbar, theta / 4.0);
    case Quantity::thermal_phase:
      return cf::thermal_phase_correction(p.nbar, theta / 4.0);
    case Quantity::naive_phase:
      return cf::naive_projection_phase(p.eps_c, p.omega_t);
    case Quantity::qsods_phase:
      return cf::qsods_protocol_phase(p.beta, p.eps_c, p.omega_t);
    case Quantity::qsods_offset:
      return cf::qsods_constant_phase(p.beta, p.eps_c);
    case Quantity::qsods_success:
      return cf::qsods_success(p.beta, p.eps_c);
  }
  throw ConfigError("unhandled sweep quantity");
}

void check_axis(const std::vector<double>& axis, const char* name) {
  if (axis.empty()) {
    throw ConfigError(std::string("empty sweep axis: ") + name);
  }
  for (double v : axis) {
    if (!std::isfinite(v)) {
      throw ConfigError(std::string("non-finite value on sweep axis ") + name);
    }
  }
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

Quantity quantity_from_name(const std::string& name) {
  for (const auto& entry : kNames) {
    if (name == entry.name) return entry.quantity;
  }
  throw ConfigError("unknown sweep quantity '" + name + "'");
}

const char* quantity_name(Quantity q) {
  for (const auto& entry : kNames) {
    if (q == entry.quantity) return entry.name;
  }
  return "unknown";
}

SweepResult run_sweep(const SweepConfig& config) {
  check_axis(config.eps_c, "eps_c");
  check_axis(config.r, "r");
  check_axis(config.beta, "beta");
  check_axis(config.omega_t, "omega_t");
  check_axis(config.nbar, "nbar");
  if (config.quantities.empty()) {
    throw ConfigError("sweep needs at least one quantity");
  }
  const std::size_t total = config.eps_c.size() * config.r.size() *
                            config.beta.size() * config.omega_t.size() *
                            config.nbar.size() * config.quantities.size();
  if (total > config.max_points) {
    throw ConfigError("sweep of " + std::to_string(total) +
                      " rows exceeds max_points = " +
                      std::to_string(config.max_points));
  }

  SweepResult result;
  result.rows.reserve(total);
  for (double eps_c : config.eps_c) {
    for (double r : config.r) {
      for (double beta : config.beta) {
        for (double omega_t : config.omega_t) {
          for (double nbar : config.nbar) {
            SweepRow row{eps_c, r, beta, omega_t, nbar, Quantity{}, 0.0};
            for (Quantity q : config.quantities) {
              row.quantity = q;
              row.value = evaluate(q, row);
              result.rows.push_back(row);
            }
          }
        }
      }
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "eps_c,r,beta,omega_t,nbar,quantity,value\n";
  for (const SweepRow& row : result.rows) {
    out += fmt(row.eps_c);
    out += ',';
    out += fmt(row.r);
    out += ',';
    out += fmt(row.beta);
    out += ',';
    out += fmt(row.omega_t);
    out += ',';
    out += fmt(row.nbar);
    out += ',';
    out += quantity_name(row.quantity);
    out += ',';
    out += fmt(row.value);
    out += '\n';
  }
  return out;
}

}  // namespace propertime::sweep
