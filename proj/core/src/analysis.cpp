#include "propertime/analysis.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace propertime::analysis {

std::vector<double> unwrap_phase(const std::vector<double>& wrapped) {
  std::vector<double> out;
  out.reserve(wrapped.size());
  if (wrapped.empty()) return out;
  out.push_back(wrapped[0]);
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 1; i < wrapped.size(); ++i) {
    double d = wrapped[i] - wrapped[i - 1];
    d -= two_pi * std::round(d / two_pi);
    if (std::abs(d) >= std::numbers::pi - 1e-9) {
      throw UnwrapFailure(
          "phase jump of " + std::to_string(d) + " rad at sample " +
              std::to_string(i) + " is too close to pi to unwrap",
          i);
    }
    out.push_back(out.back() + d);
  }
  return out;
}

FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("fit inputs have different lengths");
  }
  const std::size_t n = x.size();
  if (n < 3) {
    throw InsufficientData("line fit needs at least 3 samples, got " +
                           std::to_string(n));
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    sxx += dx * dx;
    sxy += dx * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw InsufficientData("line fit needs a nondegenerate abscissa");
  }
  FitResult r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (r.intercept + r.slope * x[i]);
    ss += e * e;
  }
  r.residual_rms = std::sqrt(ss / static_cast<double>(n));
  r.fractional_shift = 0.0;
  return r;
}

FitResult fit_fractional_shift(const std::vector<double>& omega_t,
                               const std::vector<double>& phase,
                               const ClockParams& params) {
  FitResult r = fit_line(omega_t, phase);
  r.fractional_shift = r.slope / params.ratio();
  return r;
}

double scaling_exponent(double metric1, double metric2, double eps1,
                        double eps2) {
  if (!(metric1 > 0.0) || !(metric2 > 0.0)) {
    throw UnphysicalParameters("scaling metrics must be positive");
  }
  if (!(eps1 > 0.0) || !(eps2 > 0.0) || eps1 == eps2) {
    throw UnphysicalParameters("scaling points need distinct positive eps");
  }
  return std::log(metric1 / metric2) / std::log(eps1 / eps2);
}

const std::vector<ToleranceSpec::Field>& ToleranceSpec::fields() {
  static const std::vector<Field> table = {
      {"fidelity_min", &ToleranceSpec::fidelity_min},
      {"phase_abs_tol", &ToleranceSpec::phase_abs_tol},
      {"offdiag_abs_tol", &ToleranceSpec::offdiag_abs_tol},
      {"shift_rel_tol", &ToleranceSpec::shift_rel_tol},
      {"scaling_band", &ToleranceSpec::scaling_band},
      {"qsods_scaling_band", &ToleranceSpec::qsods_scaling_band},
      {"high_t_rel_tol", &ToleranceSpec::high_t_rel_tol},
      {"visibility_al_abs_tol", &ToleranceSpec::visibility_al_abs_tol},
      {"sqsods_rel_tol", &ToleranceSpec::sqsods_rel_tol},
      {"visibility_b_abs_tol", &ToleranceSpec::visibility_b_abs_tol},
      {"approx_break_min", &ToleranceSpec::approx_break_min},
      {"qsods_offset_rel_tol", &ToleranceSpec::qsods_offset_rel_tol},
      {"success_prob_abs_tol", &ToleranceSpec::success_prob_abs_tol},
      {"norm_tol", &ToleranceSpec::norm_tol},
      {"convergence_tol", &ToleranceSpec::convergence_tol},
      {"completeness_tol", &ToleranceSpec::completeness_tol},
  };
  return table;
}

ToleranceSpec ToleranceSpec::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open tolerance file '" + path + "'");
  }
  ToleranceSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    }
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("tolerance file " + path + ":" +
                        std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trimmed.substr(0, eq);
    const std::string val = trimmed.substr(eq + 1);
    bool known = false;
    for (const Field& f : fields()) {
      if (key == f.key) {
        try {
          std::size_t used = 0;
          const double v = std::stod(val, &used);
          if (used != val.size()) throw std::invalid_argument(val);
          spec.*(f.member) = v;
        } catch (const std::exception&) {
          throw ConfigError("tolerance file " + path + ":" +
                            std::to_string(lineno) + ": bad number '" + val +
                            "'");
        }
        known = true;
        break;
      }
    }
    if (!known) {
      throw ConfigError("tolerance file " + path + ":" +
                        std::to_string(lineno) + ": unknown key '" + key +
                        "'");
    }
  }
  return spec;
}

void ToleranceSpec::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write tolerance file '" + path + "'");
  }
  out << "# validation tolerances\n";
  char buf[64];
  for (const Field& f : fields()) {
    std::snprintf(buf, sizeof(buf), "%.17g", this->*(f.member));
    out << f.key << " = " << buf << "\n";
  }
  if (!out) {
    throw IoError("failed writing tolerance file '" + path + "'");
  }
}

namespace {

template <typename T>
CompareReport compare_impl(const std::vector<T>& numeric,
                           const std::vector<T>& reference, double abs_tol) {
  if (numeric.size() != reference.size()) {
    throw DimensionMismatch("compared series have different lengths (" +
                            std::to_string(numeric.size()) + " vs " +
                            std::to_string(reference.size()) + ")");
  }
  if (numeric.empty()) {
    throw InsufficientData("compared series are empty");
  }
  CompareReport rep;
  rep.count = numeric.size();
  rep.tolerance = abs_tol;
  rep.abs_dev.reserve(numeric.size());
  double ss = 0.0;
  for (std::size_t i = 0; i < numeric.size(); ++i) {
    const double d = std::abs(numeric[i] - reference[i]);
    rep.abs_dev.push_back(d);
    ss += d * d;
    if (d > rep.max_abs_dev) {
      rep.max_abs_dev = d;
      rep.max_abs_index = i;
    }
    const double ref_mag = std::abs(reference[i]);
    if (ref_mag > 1e-300) {
      const double rel = d / ref_mag;
      if (rel > rep.max_rel_dev) {
        rep.max_rel_dev = rel;
        rep.max_rel_index = i;
      }
    }
  }
  rep.rms_dev = std::sqrt(ss / static_cast<double>(numeric.size()));
  rep.pass = rep.max_abs_dev <= abs_tol;
  return rep;
}

}  // namespace

CompareReport compare_series(const std::vector<std::complex<double>>& numeric,
                             const std::vector<std::complex<double>>& reference,
                             double abs_tol) {
  return compare_impl(numeric, reference, abs_tol);
}

CompareReport compare_series(const std::vector<double>& numeric,
                             const std::vector<double>& reference,
                             double abs_tol) {
  return compare_impl(numeric, reference, abs_tol);
}

std::string report_json(const CompareReport& report) {
  nlohmann::ordered_json j;
  j["count"] = report.count;
  j["max_abs_dev"] = report.max_abs_dev;
  j["max_abs_index"] = report.max_abs_index;
  j["rms_dev"] = report.rms_dev;
  j["max_rel_dev"] = report.max_rel_dev;
  j["max_rel_index"] = report.max_rel_index;
  j["tolerance"] = report.tolerance;
  j["pass"] = report.pass;
  return j.dump(2);
}

}  // namespace propertime::analysis
