#include "qns/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace qns {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_real(const std::string& key, const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': not a real number: '" + v + "'",
                      line, key);
  }
}

int parse_int(const std::string& key, const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                          "': not an integer: '" + v + "'",
                      line, key);
  }
}

bool parse_bool(const std::string& key, const std::string& v, int line) {
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw ConfigError("line " + std::to_string(line) + ": key '" + key +
                        "': not a boolean: '" + v + "'",
                    line, key);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "dim",          "n",           "length",       "backend",
      "nu",           "kappa",       "gamma",        "formulation",
      "bohm_form",    "density_family", "rho_mean",  "rho_amp",
      "wavenumber",   "velocity_family", "u_amp",    "u_wavenumber",
      "cfl",          "dt_max",      "t_end",        "cadence",
      "floor",        "mv_monitor",  "csv",          "checkpoint",
  };
  return keys;
}

void apply_setting(RunConfig& cfg, const std::string& key,
                   const std::string& value, int line) {
  auto fail = [&](const std::string& what) {
    throw ConfigError(
        "line " + std::to_string(line) + ": key '" + key + "': " + what, line,
        key);
  };
  try {
    if (key == "dim") cfg.dim = parse_int(key, value, line);
    else if (key == "n") cfg.n = parse_int(key, value, line);
    else if (key == "length") cfg.length = parse_real(key, value, line);
    else if (key == "backend") cfg.backend = parse_backend(value);
    else if (key == "nu") cfg.params.nu = parse_real(key, value, line);
    else if (key == "kappa") cfg.params.kappa = parse_real(key, value, line);
    else if (key == "gamma") cfg.params.gamma = parse_real(key, value, line);
    else if (key == "formulation") {
      if (value == "original") cfg.formulation = FormulationMode::original;
      else if (value == "effective") cfg.formulation = FormulationMode::effective;
      else if (value == "both") cfg.formulation = FormulationMode::both;
      else fail("unknown formulation: '" + value + "'");
    } else if (key == "bohm_form") cfg.form = parse_bohm_form(value);
    else if (key == "density_family")
      cfg.initial.density = parse_density_family(value);
    else if (key == "rho_mean") cfg.initial.rho_mean = parse_real(key, value, line);
    else if (key == "rho_amp") cfg.initial.rho_amp = parse_real(key, value, line);
    else if (key == "wavenumber") cfg.initial.wavenumber = parse_int(key, value, line);
    else if (key == "velocity_family")
      cfg.initial.velocity = parse_velocity_family(value);
    else if (key == "u_amp") cfg.initial.u_amp = parse_real(key, value, line);
    else if (key == "u_wavenumber")
      cfg.initial.u_wavenumber = parse_int(key, value, line);
    else if (key == "cfl") cfg.control.cfl = parse_real(key, value, line);
    else if (key == "dt_max") cfg.control.dt_max = parse_real(key, value, line);
    else if (key == "t_end") cfg.control.t_end = parse_real(key, value, line);
    else if (key == "cadence") cfg.cadence = parse_real(key, value, line);
    else if (key == "floor") cfg.control.floor = parse_real(key, value, line);
    else if (key == "mv_monitor") cfg.mv_monitor = parse_bool(key, value, line);
    else if (key == "csv") cfg.csv_path = value;
    else if (key == "checkpoint") cfg.checkpoint_path = value;
    else
      fail("unknown key");
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail(e.what());
  }
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const std::size_t eq = raw.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line) +
                            ": expected 'key = value', got '" + raw + "'",
                        line, raw);
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(
          "line " + std::to_string(line) + ": empty key or value", line, key);
    apply_setting(cfg, key, value, line);
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& cfg) {
  auto fail = [](const std::string& key, const std::string& what) {
    throw ConfigError("key '" + key + "': " + what, 0, key);
  };
  try {
    const Grid g = make_grid(cfg.dim, cfg.n, cfg.length);
    validate_backend(g, cfg.backend);
  } catch (const InvalidGrid& e) {
    fail("n", e.what());
  }
  if (!(cfg.params.nu > 0.0)) fail("nu", "requires nu > 0");
  if (!(cfg.params.kappa >= 0.0)) fail("kappa", "requires kappa >= 0");
  if (!(cfg.params.gamma > 1.0)) fail("gamma", "requires gamma > 1");
  if (cfg.mv_monitor && !(cfg.params.gamma < 3.0))
    fail("gamma", "requires gamma < 3 while MV monitoring is on");
  if (cfg.formulation != FormulationMode::original) {
    if (!(cfg.params.kappa > 0.0 && cfg.params.kappa < cfg.params.nu))
      fail("kappa",
           "effective formulation requires 0 < kappa < nu (got kappa=" +
               std::to_string(cfg.params.kappa) +
               ", nu=" + std::to_string(cfg.params.nu) + ")");
  }
  validate(cfg.initial);
  if (!(cfg.control.cfl > 0.0 && cfg.control.cfl <= 1.0))
    fail("cfl", "requires 0 < cfl <= 1");
  if (!(cfg.control.dt_max > 0.0)) fail("dt_max", "requires dt_max > 0");
  if (!(cfg.control.t_end >= 0.0)) fail("t_end", "requires t_end >= 0");
  if (!(cfg.control.floor > 0.0)) fail("floor", "requires floor > 0");
  if (!(cfg.cadence >= 0.0)) fail("cadence", "requires cadence >= 0");
}

}  // namespace qns
