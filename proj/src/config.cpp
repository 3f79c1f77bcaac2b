#include "magnon_fisher/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "magnon_fisher/emit.hpp"
#include "magnon_fisher/errors.hpp"

namespace magnon {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

const std::map<std::string, double>& frequency_units() {
  static const std::map<std::string, double> u{
      {"rad/s", 1.0},
      {"Hz", constants::two_pi},
      {"kHz", constants::two_pi * 1e3},
      {"MHz", constants::two_pi * 1e6},
      {"GHz", constants::two_pi * 1e9},
      {"mHz", constants::two_pi * 1e-3},
      {"uHz", constants::two_pi * 1e-6},
      {"µHz", constants::two_pi * 1e-6},
      {"μHz", constants::two_pi * 1e-6}};
  return u;
}

const std::map<std::string, double>& power_units() {
  static const std::map<std::string, double> u{
      {"W", 1.0}, {"mW", 1e-3}, {"uW", 1e-6}, {"µW", 1e-6}, {"μW", 1e-6}};
  return u;
}

const std::map<std::string, double>& temperature_units() {
  static const std::map<std::string, double> u{
      {"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}, {"µK", 1e-6}, {"μK", 1e-6}};
  return u;
}

double value_of(const toml::node& node, Dimension dim, const std::string& what) {
  if (auto s = node.value<std::string>()) return parse_value(*s, dim);
  if (auto d = node.value<double>()) return *d;
  throw ConfigError(what + ": expected a number or a string with units");
}

AxisRange parse_axis_table(const toml::table& t, const std::string& where) {
  AxisRange a;
  const auto name = t["name"].value<std::string>();
  if (!name) throw ConfigError(where + ": missing axis name");
  a.axis = parse_axis(*name);
  const Dimension dim = axis_dimension(a.axis);
  if (const auto* values = t["values"].as_array()) {
    for (const auto& v : *values) a.values.push_back(value_of(v, dim, where + ".values"));
  } else {
    if (!t.contains("start") || !t.contains("stop") || !t.contains("points")) {
      throw ConfigError(where + ": need start, stop and points (or values)");
    }
    a.start = value_of(*t.get("start"), dim, where + ".start");
    a.stop = value_of(*t.get("stop"), dim, where + ".stop");
    const auto pts = t["points"].value<int64_t>();
    if (!pts) throw ConfigError(where + ".points must be an integer");
    a.points = static_cast<int>(*pts);
    const std::string scale = t["scale"].value_or(std::string("linear"));
    if (scale == "linear") {
      a.scale = Scale::linear;
    } else if (scale == "log") {
      a.scale = Scale::log;
    } else {
      throw ConfigError(where + ".scale must be linear or log");
    }
  }
  return a;
}

}  // namespace

double parse_value(const std::string& text, Dimension dim) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double number = 0.0;
  try {
    number = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse a number from '" + text + "'");
  }
  const std::string unit = trim(s.substr(used));
  if (unit.empty()) return number;
  const auto& table = dim == Dimension::angular_frequency ? frequency_units()
                      : dim == Dimension::power           ? power_units()
                                                          : temperature_units();
  const auto it = table.find(unit);
  if (it == table.end()) throw ConfigError("unit '" + unit + "' does not fit '" + text + "'");
  return number * it->second;
}

Dimension parameter_dimension(const std::string& key) {
  if (key == "P_l") return Dimension::power;
  if (key == "T") return Dimension::temperature;
  return Dimension::angular_frequency;
}

Dimension axis_dimension(Axis axis) { return parameter_dimension(to_string(axis)); }

void set_parameter(SystemParams& p, const std::string& key, double v) {
  if (key == "P_l") {
    p.P_l = v;
  } else if (key == "T") {
    p.T = v;
  } else if (key == "omega_l") {
    p.omega_l = v;
    p.omega_a1 = v + p.delta_a1;
    p.omega_a2 = v + p.delta_a2;
    p.omega_m = v + p.delta_m;
  } else if (key == "gamma_a") {
    p.gamma_a1 = p.gamma_a2 = v;
  } else if (key == "gamma_a1") {
    p.gamma_a1 = v;
  } else if (key == "gamma_a2") {
    p.gamma_a2 = v;
  } else if (key == "gamma_m") {
    p.gamma_m = v;
  } else if (key == "J") {
    p.J = v;
  } else if (key == "g") {
    p.g = v;
  } else if (key == "K") {
    p.K = v;
  } else if (key == "delta_a") {
    set_cavity_detuning(p, v);
  } else if (key == "delta_a1") {
    p.delta_a1 = v;
    p.omega_a1 = p.omega_l + v;
  } else if (key == "delta_a2") {
    p.delta_a2 = v;
    p.omega_a2 = p.omega_l + v;
  } else if (key == "delta_m") {
    set_magnon_detuning(p, v);
  } else if (key == "omega_a1") {
    p.omega_a1 = v;
  } else if (key == "omega_a2") {
    p.omega_a2 = v;
  } else if (key == "omega_m") {
    p.omega_m = v;
  } else {
    throw ConfigError("unknown parameter '" + key + "'");
  }
}

void set_parameter(SystemParams& p, const std::string& key, const std::string& text) {
  set_parameter(p, key, parse_value(text, parameter_dimension(key)));
}

void apply_override(SystemParams& p, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("expected key=value, got '" + assignment + "'");
  set_parameter(p, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

RunConfig parse_config(const std::string& toml_text) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    throw ConfigError(std::string("TOML parse error: ") + std::string(e.description()));
  }
  RunConfig cfg;
  cfg.params = baseline();

  if (const auto* params = root["params"].as_table()) {
    // The intrinsic/external split of γ_a2 is summed after the loop.
    std::optional<double> intrinsic, external;
    for (const auto& [k, node] : *params) {
      const std::string key(k.str());
      if (key == "gamma_a2_intrinsic" || key == "gamma_a2_external") {
        const double v = value_of(node, Dimension::angular_frequency, "params." + key);
        (key == "gamma_a2_intrinsic" ? intrinsic : external) = v;
        continue;
      }
      set_parameter(cfg.params, key, value_of(node, parameter_dimension(key), "params." + key));
    }
    if (intrinsic || external) {
      if (!intrinsic || !external) {
        throw ConfigError("gamma_a2_intrinsic and gamma_a2_external must be given together");
      }
      cfg.params.gamma_a2 = total_linewidth(*intrinsic, *external);
    }
  }

  if (const auto* sw = root["sweep"].as_table()) {
    SweepSpec s;
    if (const auto preset = (*sw)["preset"].value<std::string>()) s = figure_preset(*preset);
    if (const auto name = (*sw)["name"].value<std::string>()) s.name = *name;
    if (const auto* axis = (*sw)["axis"].as_table()) {
      s.primary = parse_axis_table(*axis, "sweep.axis");
      s.range_note.clear();
      s.approximate_ranges = false;
    }
    if (const auto* sec = (*sw)["secondary"].as_table()) s.secondary = parse_axis_table(*sec, "sweep.secondary");
    if (const auto* qs = (*sw)["quantities"].as_array()) {
      s.quantities.clear();
      for (const auto& q : *qs) {
        const auto str = q.value<std::string>();
        if (!str) throw ConfigError("sweep.quantities must be strings");
        s.quantities.push_back(parse_quantity(*str));
      }
    }
    if (const auto mode = (*sw)["mode"].value<std::string>()) s.cfi_mode = parse_mode(*mode);
    if (const auto d = (*sw)["derivative"].value<std::string>()) {
      s.derivative = parse_derivative_method(*d);
    }
    if (!sw->contains("preset") && !sw->contains("axis")) {
      throw ConfigError("sweep needs either a preset or an [sweep.axis] table");
    }
    s.validate();
    cfg.sweep = s;
  }
  validate(cfg.params);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string canonical_text(const SweepSpec& spec, const SystemParams& p) {
  std::ostringstream os;
  auto axis = [&](const AxisRange& a) {
    os << to_string(a.axis) << ':' << format_number(a.start) << ':' << format_number(a.stop)
       << ':' << a.points << ':' << (a.scale == Scale::log ? "log" : "linear") << ':';
    for (double v : a.values) os << format_number(v) << ';';
    os << '\n';
  };
  os << "name=" << spec.name << '\n';
  axis(spec.primary);
  if (spec.secondary) axis(*spec.secondary);
  for (Quantity q : spec.quantities) os << to_string(q) << ';';
  os << "\nmode=" << to_string(spec.cfi_mode) << "\nderivative=" << to_string(spec.derivative)
     << '\n';
  for (double v : {p.omega_a1, p.omega_a2, p.omega_m, p.delta_a1, p.delta_a2, p.delta_m,
                   p.gamma_a1, p.gamma_a2, p.gamma_m, p.J, p.g, p.K, p.P_l, p.omega_l, p.T}) {
    os << format_number(v) << ';';
  }
  return os.str();
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const SweepSpec& spec, const SystemParams& p) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(canonical_text(spec, p))));
  return buf;
}

}  // namespace magnon
