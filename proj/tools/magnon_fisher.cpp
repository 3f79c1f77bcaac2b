// magnon-fisher: steady state, stability, QFI/CFI and sweeps from the command line.

#include <CLI11.hpp>
#include <cmath>
#include <iostream>
#include <nlohmann/json.hpp>

#include "magnon_fisher/config.hpp"
#include "magnon_fisher/emit.hpp"
#include "magnon_fisher/errors.hpp"
#include "magnon_fisher/measure.hpp"
#include "magnon_fisher/normal_modes.hpp"
#include "magnon_fisher/sweep.hpp"

using namespace magnon;
using ojson = nlohmann::ordered_json;

namespace {

struct Common {
  std::string config;
  std::vector<std::string> overrides;
  std::string derivative = "analytic";
};

SystemParams load_params(const Common& c) {
  SystemParams p = c.config.empty() ? baseline() : load_config(c.config).params;
  for (const auto& o : c.overrides) apply_override(p, o);
  validate(p);
  for (const auto& w : consistency_warnings(p)) std::cerr << "warning: " << w << '\n';
  return p;
}

ojson complex_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

void print(const ojson& j) { std::cout << j.dump(2) << '\n'; }

// "name:start:stop:points[:log]" with unit strings allowed for start/stop.
AxisRange parse_axis_option(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = text.find(':', pos);
    parts.push_back(text.substr(pos, next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (parts.size() < 4 || parts.size() > 5) {
    throw ConfigError("axis must look like name:start:stop:points[:log], got '" + text + "'");
  }
  AxisRange a;
  a.axis = parse_axis(parts[0]);
  a.start = parse_value(parts[1], axis_dimension(a.axis));
  a.stop = parse_value(parts[2], axis_dimension(a.axis));
  a.points = std::stoi(parts[3]);
  if (parts.size() == 5) {
    if (parts[4] != "log" && parts[4] != "linear") throw ConfigError("axis scale must be log or linear");
    a.scale = parts[4] == "log" ? Scale::log : Scale::linear;
  }
  return a;
}

unsigned resolve_jobs(int jobs) {
  if (jobs >= 0) return static_cast<unsigned>(jobs);
  return jobs_from_environment();
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "TOML file with a [params] table");
  sub->add_option("--set", c.overrides, "parameter override, e.g. --set \"J=30 MHz\"")
      ->take_all();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady state, stability and Fisher information of the photon-magnon coupling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version);

  Common steady_opts, qfi_opts, cfi_opts, modes_opts;

  auto* steady_cmd = app.add_subcommand("steady-state", "mean-field steady state as JSON");
  add_common(steady_cmd, steady_opts);

  auto* qfi_cmd = app.add_subcommand("qfi", "global and subsystem QFI as JSON");
  add_common(qfi_cmd, qfi_opts);
  qfi_cmd->add_option("--derivative", qfi_opts.derivative, "analytic or stencil")
      ->check(CLI::IsMember({"analytic", "stencil"}));
  long long repetitions = 1;
  qfi_cmd->add_option("--repetitions", repetitions, "N for the Cramer-Rao bound")
      ->check(CLI::PositiveNumber);

  auto* cfi_cmd = app.add_subcommand("cfi", "classical Fisher information of one measurement");
  add_common(cfi_cmd, cfi_opts);
  std::string cfi_mode = "a2", cfi_meas = "hom-q";
  cfi_cmd->add_option("--mode", cfi_mode, "measured mode")->check(CLI::IsMember({"a1", "a2", "m"}));
  cfi_cmd->add_option("--measurement", cfi_meas, "hom-q, hom-p, het or ogm")
      ->check(CLI::IsMember({"hom-q", "hom-p", "het", "ogm"}));
  cfi_cmd->add_option("--derivative", cfi_opts.derivative, "analytic or stencil")
      ->check(CLI::IsMember({"analytic", "stencil"}));

  auto* modes_cmd = app.add_subcommand("normal-modes", "Bogoliubov and hybrid cavity modes as JSON");
  add_common(modes_cmd, modes_opts);

  Common map_opts;
  auto* map_cmd = app.add_subcommand("stability-map", "CSV grid of stability verdicts");
  add_common(map_cmd, map_opts);
  std::string map_preset, map_x, map_y, map_out = "-";
  int map_jobs = -1;
  map_cmd->add_option("--preset", map_preset, "take the axes of a figure preset");
  map_cmd->add_option("--x", map_x, "axis as name:start:stop:points[:log]");
  map_cmd->add_option("--y", map_y, "second axis, same syntax");
  map_cmd->add_option("--out", map_out, "output path, - for stdout");
  map_cmd->add_option("--jobs", map_jobs, "worker threads (default: MAGNON_FISHER_JOBS or 1)");

  Common sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep from a preset or a config file");
  std::string preset, sweep_config, out = "-", format = "csv";
  int jobs = -1;
  auto* preset_opt = sweep_cmd->add_option("--preset", preset, "figure preset name");
  auto* config_opt = sweep_cmd->add_option("--config", sweep_config, "TOML sweep configuration");
  preset_opt->excludes(config_opt);
  sweep_cmd->add_option("--set", sweep_opts.overrides, "parameter override")->take_all();
  sweep_cmd->add_option("--out", out, "output path, - for stdout");
  sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep_cmd->add_option("--jobs", jobs, "worker threads (default: MAGNON_FISHER_JOBS or 1)");
  std::string sweep_derivative;
  sweep_cmd->add_option("--derivative", sweep_derivative, "analytic or stencil")
      ->check(CLI::IsMember({"analytic", "stencil"}));
  bool list_presets = false;
  sweep_cmd->add_flag("--list-presets", list_presets, "print the preset names and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*steady_cmd) {
      const SystemParams p = load_params(steady_opts);
      const auto branches = steady_branches(p);
      ojson j;
      j["branches"] = branches.size();
      if (branches.size() == 1) {
        const auto& ss = branches.front();
        const auto lin = linearization_check(ss);
        const auto res = mean_field_residual(p, ss);
        j["a1_mean"] = complex_json(ss.a1_mean);
        j["a2_mean"] = complex_json(ss.a2_mean);
        j["m_mean"] = complex_json(ss.m_mean);
        j["m_abs2"] = ss.m_abs2;
        j["delta_eff"] = ss.delta_eff;
        j["residual"] = res;
        j["linearization"] = {{"a2_abs2", lin.a2_abs2},
                              {"m_abs2", lin.m_abs2},
                              {"spin_ratio", lin.spin_ratio},
                              {"weak_drive", lin.weak_drive},
                              {"spin_saturation", lin.spin_saturation}};
        const auto stab = check_stability(build_drift(p, ss));
        j["stability"] = {{"stable", stab.stable},
                          {"hurwitz_ok", stab.hurwitz_ok},
                          {"marginal", stab.marginal},
                          {"max_real_eig", stab.max_real_eig}};
      } else {
        ojson list = ojson::array();
        for (const auto& ss : branches) list.push_back(ss.m_abs2);
        j["m_abs2_branches"] = list;
      }
      print(j);
      if (branches.size() != 1) return 1;
    } else if (*qfi_cmd) {
      const SystemParams p = load_params(qfi_opts);
      const auto method = parse_derivative_method(qfi_opts.derivative);
      const auto r = fisher_report(p, method);
      ojson j;
      j["derivative"] = to_string(method);
      j["qfi_global"] = r.qfi_global;
      j["qfi_a1"] = r.qfi_sub[0];
      j["qfi_a2"] = r.qfi_sub[1];
      j["qfi_m"] = r.qfi_sub[2];
      j["xi_a1"] = r.ratios[0];
      j["xi_a2"] = r.ratios[1];
      j["xi_m"] = r.ratios[2];
      j["repetitions"] = repetitions;
      j["qcrb"] = r.qcrb(repetitions);
      print(j);
    } else if (*cfi_cmd) {
      const SystemParams p = load_params(cfi_opts);
      const auto method = parse_derivative_method(cfi_opts.derivative);
      const GaussianState st = steady_gaussian_state(p);
      const Sensitivity sens = sensitivity(p, method);
      const Mode mode = parse_mode(cfi_mode);
      const auto kind = parse_measurement(cfi_meas);
      ojson j;
      j["mode"] = cfi_mode;
      j["measurement"] = cfi_meas;
      j["derivative"] = to_string(method);
      if (kind == MeasurementKind::GeneralGaussian) {
        const auto ogm = optimal_gaussian(st, sens, mode);
        j["cfi"] = ogm.F;
        j["theta"] = ogm.spec.theta;
        j["r"] = ogm.spec.r;
        j["boundary_maximum"] = ogm.boundary_maximum;
      } else {
        j["cfi"] = cfi(st, sens, mode, kind);
      }
      j["qfi_mode"] = qfi_subsystem(st, sens, mode);
      print(j);
    } else if (*modes_cmd) {
      const SystemParams p = load_params(modes_opts);
      const SteadyState ss = solve_steady(p);
      ojson j;
      const auto h = hybrid_modes(p);
      j["omega_plus"] = h.omega_plus;
      j["omega_minus"] = h.omega_minus;
      j["G_plus"] = h.G_plus;
      j["G_minus"] = h.G_minus;
      j["f"] = h.f;
      j["h"] = h.h;
      try {
        const auto b = bogoliubov(p, ss);
        j["E"] = b.E;
        j["alpha"] = b.alpha;
        j["beta"] = b.beta;
        j["phi"] = b.phi;
      } catch (const DegenerateNormalMode& e) {
        j["E"] = nullptr;
        j["bogoliubov_error"] = e.code();
      }
      try {
        j["peak_delta_a"] = peak_predictor(p, ss);
      } catch (const NoCrossing& e) {
        j["peak_delta_a"] = nullptr;
        j["peak_error"] = e.code();
      }
      print(j);
    } else if (*map_cmd) {
      SweepSpec spec;
      if (!map_preset.empty()) spec = figure_preset(map_preset);
      if (!map_x.empty()) spec.primary = parse_axis_option(map_x);
      if (!map_y.empty()) spec.secondary = parse_axis_option(map_y);
      if (map_preset.empty() && map_x.empty()) throw ConfigError("stability-map needs --preset or --x");
      spec.quantities = {Quantity::stability};
      const SystemParams p = load_params(map_opts);
      emit(stability_map(spec, p, resolve_jobs(map_jobs)), Format::csv, map_out);
    } else if (*sweep_cmd) {
      if (list_presets) {
        for (const auto& n : preset_names()) std::cout << n << '\n';
        return 0;
      }
      SweepSpec spec;
      SystemParams p = baseline();
      if (!preset.empty()) {
        spec = figure_preset(preset);
      } else if (!sweep_config.empty()) {
        const RunConfig cfg = load_config(sweep_config);
        if (!cfg.sweep) throw ConfigError("config file has no [sweep] table");
        spec = *cfg.sweep;
        p = cfg.params;
      } else {
        throw ConfigError("sweep needs --preset or --config");
      }
      for (const auto& o : sweep_opts.overrides) apply_override(p, o);
      if (!sweep_derivative.empty()) spec.derivative = parse_derivative_method(sweep_derivative);
      const auto result = run_sweep(spec, p, resolve_jobs(jobs));
      emit(result, parse_format(format), out);
      std::cerr << result.ok_count() << " points, " << result.skipped_count() << " skipped\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
    return 2;
  } catch (const UnknownPreset& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
