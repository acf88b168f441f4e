#pragma once

#include <string>
#include <vector>

#include "propertime/params.hpp"
#include "propertime/protocols.hpp"
#include "propertime/sweep.hpp"

// Flat key-value run configs: `key = value` lines, '#' comments, strict
// rejection of unknown or duplicate keys. The documented keys are listed per
// loader below; everything is deterministic (no seeds anywhere).

namespace propertime::config {

class KeyValues {
 public:
  static KeyValues from_text(const std::string& text);

  bool has(const std::string& key) const;
  // Accessors mark the key consumed; finish() then rejects leftovers.
  std::string require(const std::string& key);
  std::string get(const std::string& key, const std::string& fallback);
  double require_double(const std::string& key);
  double get_double(const std::string& key, double fallback);
  int get_int(const std::string& key, int fallback);
  void finish() const;  // unknown (unconsumed) key → ConfigError

 private:
  int find(const std::string& key) const;
  std::vector<std::pair<std::string, std::string>> entries_;
  std::vector<bool> used_;
};

// "lin:start:stop:count" | "x,y,z" | "x"
std::vector<double> parse_axis(const std::string& text);

// oracle | exact | diagonal_sods | perturbative
dynamics::Variant parse_variant(const std::string& name);

// Parameter keys (exactly one source):
//   preset = al+ | b+      [trap_mhz = 20]
//   eps_c = 1e-3           [omega_ratio = 1  (ω_c/ω)]
ClockParams params_from(KeyValues& kv);

// Keys: params keys, grid (required), prep = vacuum, variant = exact,
//       dim = 0 (adaptive), mixed_path = ensemble | full_density
protocols::RamseyConfig ramsey_from_text(const std::string& text);

// Keys: params keys, beta (required), projector = plus01 | plus02,
//       variant = exact | oracle, dim = 128, periods = 16,
//       samples_per_period = 64
protocols::QsodsConfig qsods_from_text(const std::string& text);

// Keys: quantities (required, comma list), axes eps_c | r | beta | omega_t |
//       nbar (default single 0), max_points = 1000000
sweep::SweepConfig sweep_from_text(const std::string& text);

}  // namespace propertime::config
