#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "propertime/closed_forms.hpp"
#include "propertime/config.hpp"
#include "propertime/errors.hpp"
#include "propertime/protocols.hpp"
#include "propertime/serialize.hpp"
#include "propertime/sweep.hpp"
#include "propertime/validation.hpp"

// Exit codes: 0 success, 1 validation checks failed, 2 usage/config/
// unphysical input, 3 numeric failure (truncation overflow, unwrap, ...).

namespace pt = propertime;

namespace {

std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string fmt10(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

struct ShiftFlags {
  std::string kind;
  std::string preset;
  double trap_mhz = 20.0;
  double eps_c = 0.0;
  bool eps_c_set = false;
  double eps_m = 0.0;
  bool eps_m_set = false;
  double omega_ratio = 1.0;
  double nbar = 0.0;
  double r = 0.0;
  double beta = 0.0;
  bool beta_set = false;
  std::string out;
};

pt::ClockParams params_from_flags(const ShiftFlags& f) {
  const bool has_preset = !f.preset.empty();
  if (has_preset == f.eps_c_set) {
    throw pt::ConfigError("need exactly one parameter source: --preset or --eps-c");
  }
  if (has_preset) {
    if (f.preset == "al+") return pt::ClockParams::al_plus(f.trap_mhz);
    if (f.preset == "b+") return pt::ClockParams::b_plus(f.trap_mhz);
    throw pt::ConfigError("unknown preset '" + f.preset + "' (al+ | b+)");
  }
  const double ratio = f.eps_m_set ? f.eps_c / f.eps_m : f.omega_ratio;
  return pt::ClockParams::dimensionless(f.eps_c, ratio);
}

int cmd_shift(const ShiftFlags& f) {
  const auto params = params_from_flags(f);
  namespace cf = pt::closed_forms;
  cf::ShiftResult result;
  double success = -1.0;
  if (f.kind == "sods") {
    result = cf::thermal_sods(f.nbar, params);
  } else if (f.kind == "vsods") {
    result = cf::vacuum_sods(params);
  } else if (f.kind == "sqsods") {
    result = cf::squeezed_sods(f.r, params);
  } else if (f.kind == "qsods") {
    if (!f.beta_set) throw pt::ConfigError("qsods needs --beta");
    result.fractional_shift = 0.0;
    result.phase_offset = cf::qsods_constant_phase(f.beta, params.eps_c());
    result.visibility = 1.0;
    result.regime = "time-averaged";
    success = cf::qsods_success(f.beta, params.eps_c());
  } else {
    throw pt::ConfigError("unknown shift kind '" + f.kind +
                          "' (sods | vsods | sqsods | qsods)");
  }

  std::printf("%-18s%s\n", "kind", f.kind.c_str());
  std::printf("%-18s%s\n", "eps_c", fmt10(params.eps_c()).c_str());
  std::printf("%-18s%s\n", "eps_m", fmt10(params.eps_m()).c_str());
  if (f.kind == "sods") std::printf("%-18s%s\n", "nbar", fmt10(f.nbar).c_str());
  if (f.kind == "sqsods") std::printf("%-18s%s\n", "r", fmt10(f.r).c_str());
  if (f.kind == "qsods") std::printf("%-18s%s\n", "beta", fmt10(f.beta).c_str());
  std::printf("%-18s%s\n", "fractional_shift",
              fmt10(result.fractional_shift).c_str());
  std::printf("%-18s%s\n", "phase_offset", fmt10(result.phase_offset).c_str());
  std::printf("%-18s%s\n", "visibility", fmt10(result.visibility).c_str());
  if (success >= 0.0) {
    std::printf("%-18s%s\n", "success_prob", fmt10(success).c_str());
  }
  std::printf("%-18s%s\n", "regime", result.regime.c_str());

  if (!f.out.empty()) {
    std::string csv =
        "kind,eps_c,eps_m,nbar,r,beta,fractional_shift,phase_offset,"
        "visibility,regime\n";
    csv += f.kind + ',' + fmt17(params.eps_c()) + ',' + fmt17(params.eps_m()) +
           ',' + fmt17(f.nbar) + ',' + fmt17(f.r) + ',' + fmt17(f.beta) + ',' +
           fmt17(result.fractional_shift) + ',' + fmt17(result.phase_offset) +
           ',' + fmt17(result.visibility) + ',' + result.regime + '\n';
    pt::io::write_text_file(f.out, csv);
  }
  return 0;
}

int cmd_ramsey(const std::string& config_path, const std::string& out,
               int dim_override, const std::string& grid_override) {
  auto cfg = pt::config::ramsey_from_text(pt::io::read_text_file(config_path));
  if (dim_override > 0) cfg.dim = dim_override;
  if (!grid_override.empty()) cfg.grid = pt::config::parse_axis(grid_override);
  const auto run = pt::protocols::run_ramsey(cfg);
  pt::io::write_text_file(out + ".csv", pt::io::protocol_csv(run));
  pt::io::write_text_file(out + ".json", pt::io::protocol_summary_json(run));
  std::cout << "wrote " << out << ".csv and " << out << ".json ("
            << run.omega_t.size() << " points, dim " << run.dim << ")\n";
  return 0;
}

int cmd_qsods_protocol(const std::string& config_path, const std::string& out,
                       int dim_override) {
  auto cfg = pt::config::qsods_from_text(pt::io::read_text_file(config_path));
  if (dim_override > 0) cfg.dim = dim_override;
  const auto run = pt::protocols::run_qsods_protocol(cfg);
  pt::io::write_text_file(out + ".csv", pt::io::protocol_csv(run));
  pt::io::write_text_file(out + ".json", pt::io::protocol_summary_json(run));
  std::cout << "wrote " << out << ".csv and " << out << ".json ("
            << run.omega_t.size() << " points, mean success "
            << fmt10(run.mean_success) << ")\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& out) {
  const auto cfg = pt::config::sweep_from_text(pt::io::read_text_file(config_path));
  const auto result = pt::sweep::run_sweep(cfg);
  pt::io::write_text_file(out, pt::sweep::sweep_csv(result));
  std::cout << "wrote " << out << " (" << result.rows.size() << " rows)\n";
  return 0;
}

std::string self_path(const char* argv0) {
  std::error_code ec;
  const auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
  if (!ec) return p.string();
  return argv0 ? argv0 : "";
}

int cmd_validate(const std::string& tolerances_path,
                 const std::string& report_path, const char* argv0) {
  const auto tol = tolerances_path.empty()
                       ? pt::analysis::ToleranceSpec::defaults()
                       : pt::analysis::ToleranceSpec::from_file(tolerances_path);
  const auto report = pt::validation::run_acceptance(tol, self_path(argv0));
  std::cout << pt::validation::report_text(report);
  if (!report_path.empty()) {
    pt::io::write_text_file(report_path, pt::validation::report_json(report));
  }
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Relativistic proper-time effects in a harmonically trapped two-level "
      "clock: closed-form shift catalog, Ramsey/projection protocol "
      "simulations, parameter sweeps, and the validation suite."};
  app.set_version_flag("--version", "1.0.0");
  app.require_subcommand(1);

  ShiftFlags sf;
  auto* shift = app.add_subcommand(
      "shift", "Evaluate a closed-form clock shift (sods|vsods|sqsods|qsods)");
  shift->add_option("kind", sf.kind, "sods | vsods | sqsods | qsods")
      ->required();
  shift->add_option("--preset", sf.preset, "species preset: al+ | b+");
  shift->add_option("--trap-mhz", sf.trap_mhz, "trap frequency ω/2π in MHz")
      ->capture_default_str();
  auto* eps_c_opt = shift->add_option("--eps-c", sf.eps_c, "ħω_c/mc²");
  auto* eps_m_opt =
      shift->add_option("--eps-m", sf.eps_m, "ħω/mc² (with --eps-c)");
  shift->add_option("--omega-ratio", sf.omega_ratio,
                    "ω_c/ω (with --eps-c, ignored when --eps-m is given)")
      ->capture_default_str();
  shift->add_option("--nbar", sf.nbar, "thermal occupation (sods)");
  shift->add_option("--r", sf.r, "squeezing parameter (sqsods)");
  auto* beta_opt =
      shift->add_option("--beta", sf.beta, "displacement amplitude (qsods)");
  shift->add_option("--out", sf.out, "write a one-row CSV here");

  std::string ramsey_config;
  std::string ramsey_out;
  int ramsey_dim = 0;
  std::string ramsey_grid;
  auto* ramsey = app.add_subcommand(
      "ramsey", "Simulate a Ramsey run from a config file");
  ramsey->add_option("--config", ramsey_config, "key=value run config")
      ->required();
  ramsey->add_option("--out", ramsey_out, "output prefix (.csv, .json)")
      ->required();
  ramsey->add_option("--dim", ramsey_dim, "override truncation dimension");
  ramsey->add_option("--grid", ramsey_grid,
                     "override ωt grid (lin:a:b:n or comma list)");

  std::string qsods_config;
  std::string qsods_out;
  int qsods_dim = 0;
  auto* qsods = app.add_subcommand(
      "qsods-protocol",
      "Simulate the displaced-projection protocol from a config file");
  qsods->add_option("--config", qsods_config, "key=value run config")
      ->required();
  qsods->add_option("--out", qsods_out, "output prefix (.csv, .json)")
      ->required();
  qsods->add_option("--dim", qsods_dim, "override truncation dimension");

  std::string sweep_config;
  std::string sweep_out;
  auto* sweep = app.add_subcommand(
      "sweep", "Evaluate closed forms over parameter grids (long-format CSV)");
  sweep->add_option("--config", sweep_config, "key=value sweep config")
      ->required();
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  std::string tolerances_path;
  std::string report_path;
  auto* validate = app.add_subcommand(
      "validate", "Run the full acceptance suite (exit 0 iff all pass)");
  validate->add_option("--tolerances", tolerances_path,
                       "key=value tolerance overrides");
  validate->add_option("--report", report_path, "write a JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  sf.eps_c_set = eps_c_opt->count() > 0;
  sf.eps_m_set = eps_m_opt->count() > 0;
  sf.beta_set = beta_opt->count() > 0;

  try {
    if (shift->parsed()) return cmd_shift(sf);
    if (ramsey->parsed()) {
      return cmd_ramsey(ramsey_config, ramsey_out, ramsey_dim, ramsey_grid);
    }
    if (qsods->parsed()) {
      return cmd_qsods_protocol(qsods_config, qsods_out, qsods_dim);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_out);
    if (validate->parsed()) {
      return cmd_validate(tolerances_path, report_path, argv[0]);
    }
    return 2;
  } catch (const pt::TruncationOverflow& e) {
    std::cerr << "error: " << e.what() << " (required dim " << e.required_dim
              << ")\n";
    return 3;
  } catch (const pt::UnwrapFailure& e) {
    std::cerr << "error: " << e.what() << " (sample " << e.sample_index
              << ")\n";
    return 3;
  } catch (const pt::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pt::UnphysicalParameters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pt::InvalidDimension& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pt::DimensionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pt::InsufficientData& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pt::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const pt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
