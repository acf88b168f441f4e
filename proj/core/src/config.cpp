#include "propertime/config.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

#include "propertime/errors.hpp"

namespace propertime::config {
namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& text, const std::string& context) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(context + ": cannot parse number '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(value)) {
    throw ConfigError(context + ": cannot parse number '" + text + "'");
  }
  return value;
}

int parse_int(const std::string& text, const std::string& context) {
  const double value = parse_double(text, context);
  if (value != std::floor(value) || std::abs(value) > 2e9) {
    throw ConfigError(context + ": expected an integer, got '" + text + "'");
  }
  return static_cast<int>(value);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

KeyValues KeyValues::from_text(const std::string& text) {
  KeyValues kv;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  while (std::getline(stream, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key");
    }
    if (kv.find(key) >= 0) {
      throw ConfigError("duplicate config key '" + key + "'");
    }
    kv.entries_.emplace_back(key, value);
    kv.used_.push_back(false);
  }
  return kv;
}

int KeyValues::find(const std::string& key) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].first == key) return static_cast<int>(i);
  }
  return -1;
}

bool KeyValues::has(const std::string& key) const { return find(key) >= 0; }

std::string KeyValues::require(const std::string& key) {
  const int i = find(key);
  if (i < 0) throw ConfigError("missing config key '" + key + "'");
  used_[static_cast<std::size_t>(i)] = true;
  return entries_[static_cast<std::size_t>(i)].second;
}

std::string KeyValues::get(const std::string& key, const std::string& fallback) {
  const int i = find(key);
  if (i < 0) return fallback;
  used_[static_cast<std::size_t>(i)] = true;
  return entries_[static_cast<std::size_t>(i)].second;
}

double KeyValues::require_double(const std::string& key) {
  return parse_double(require(key), key);
}

double KeyValues::get_double(const std::string& key, double fallback) {
  const int i = find(key);
  if (i < 0) return fallback;
  used_[static_cast<std::size_t>(i)] = true;
  return parse_double(entries_[static_cast<std::size_t>(i)].second, key);
}

int KeyValues::get_int(const std::string& key, int fallback) {
  const int i = find(key);
  if (i < 0) return fallback;
  used_[static_cast<std::size_t>(i)] = true;
  return parse_int(entries_[static_cast<std::size_t>(i)].second, key);
}

void KeyValues::finish() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!used_[i]) {
      throw ConfigError("unknown config key '" + entries_[i].first + "'");
    }
  }
}

std::vector<double> parse_axis(const std::string& text) {
  const std::string spec = trim(text);
  if (spec.empty()) throw ConfigError("empty grid spec");
  if (spec.rfind("lin:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 4) {
      throw ConfigError("grid spec '" + spec + "' is not lin:start:stop:count");
    }
    const double start = parse_double(trim(parts[1]), "grid start");
    const double stop = parse_double(trim(parts[2]), "grid stop");
    const int count = parse_int(trim(parts[3]), "grid count");
    try {
      return protocols::linspace(start, stop, count);
    } catch (const UnphysicalParameters& e) {
      throw ConfigError(std::string("grid spec '") + spec + "': " + e.what());
    }
  }
  std::vector<double> values;
  for (const std::string& part : split(spec, ',')) {
    values.push_back(parse_double(trim(part), "grid value"));
  }
  return values;
}

dynamics::Variant parse_variant(const std::string& name) {
  if (name == "oracle") return dynamics::Variant::oracle;
  if (name == "exact") return dynamics::Variant::exact;
  if (name == "diagonal_sods") return dynamics::Variant::diagonal_sods;
  if (name == "perturbative") return dynamics::Variant::perturbative;
  throw ConfigError("unknown propagator variant '" + name + "'");
}

ClockParams params_from(KeyValues& kv) {
  const bool has_preset = kv.has("preset");
  const bool has_eps = kv.has("eps_c");
  if (has_preset == has_eps) {
    throw ConfigError("need exactly one parameter source: preset or eps_c");
  }
  if (has_preset) {
    const std::string preset = kv.require("preset");
    const double trap_mhz = kv.get_double("trap_mhz", 20.0);
    if (preset == "al+") return ClockParams::al_plus(trap_mhz);
    if (preset == "b+") return ClockParams::b_plus(trap_mhz);
    throw ConfigError("unknown preset '" + preset + "' (al+ | b+)");
  }
  if (kv.has("trap_mhz")) {
    throw ConfigError("trap_mhz applies only to presets");
  }
  const double eps_c = kv.require_double("eps_c");
  const double ratio = kv.get_double("omega_ratio", 1.0);
  return ClockParams::dimensionless(eps_c, ratio);
}

protocols::RamseyConfig ramsey_from_text(const std::string& text) {
  KeyValues kv = KeyValues::from_text(text);
  protocols::RamseyConfig cfg;
  cfg.params = params_from(kv);
  cfg.prep = protocols::PrepSpec::parse(kv.get("prep", "vacuum"));
  cfg.variant = parse_variant(kv.get("variant", "exact"));
  cfg.grid = parse_axis(kv.require("grid"));
  cfg.dim = kv.get_int("dim", 0);
  const std::string path = kv.get("mixed_path", "ensemble");
  if (path == "ensemble") {
    cfg.mixed_path = dynamics::MixedPath::ensemble;
  } else if (path == "full_density") {
    cfg.mixed_path = dynamics::MixedPath::full_density;
  } else {
    throw ConfigError("unknown mixed_path '" + path + "'");
  }
  kv.finish();
  return cfg;
}

protocols::QsodsConfig qsods_from_text(const std::string& text) {
  KeyValues kv = KeyValues::from_text(text);
  protocols::QsodsConfig cfg;
  cfg.params = params_from(kv);
  cfg.beta = kv.require_double("beta");
  const std::string projector = kv.get("projector", "plus01");
  if (projector == "plus01") {
    cfg.projector = protocols::Projector::plus01;
  } else if (projector == "plus02") {
    cfg.projector = protocols::Projector::plus02;
  } else {
    throw ConfigError("unknown projector '" + projector +
                      "' (plus01 | plus02)");
  }
  cfg.variant = parse_variant(kv.get("variant", "exact"));
  cfg.dim = kv.get_int("dim", 128);
  cfg.periods = kv.get_int("periods", 16);
  cfg.samples_per_period = kv.get_int("samples_per_period", 64);
  kv.finish();
  return cfg;
}

sweep::SweepConfig sweep_from_text(const std::string& text) {
  KeyValues kv = KeyValues::from_text(text);
  sweep::SweepConfig cfg;
  for (const std::string& name : split(kv.require("quantities"), ',')) {
    cfg.quantities.push_back(sweep::quantity_from_name(trim(name)));
  }
  if (kv.has("eps_c")) cfg.eps_c = parse_axis(kv.require("eps_c"));
  if (kv.has("r")) cfg.r = parse_axis(kv.require("r"));
  if (kv.has("beta")) cfg.beta = parse_axis(kv.require("beta"));
  if (kv.has("omega_t")) cfg.omega_t = parse_axis(kv.require("omega_t"));
  if (kv.has("nbar")) cfg.nbar = parse_axis(kv.require("nbar"));
  const int cap = kv.get_int("max_points", 1000000);
  if (cap < 1) throw ConfigError("max_points must be ≥ 1");
  cfg.max_points = static_cast<std::size_t>(cap);
  kv.finish();
  return cfg;
}

}  // namespace propertime::config
