#include "magnon_fisher/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

#include "magnon_fisher/errors.hpp"

namespace magnon {

namespace {

constexpr double nan_v = std::numeric_limits<double>::quiet_NaN();
constexpr double MHz = constants::two_pi * 1e6;
constexpr double uHz = constants::two_pi * 1e-6;

const std::vector<std::pair<Axis, std::string>>& axis_names() {
  static const std::vector<std::pair<Axis, std::string>> names{
      {Axis::P_l, "P_l"},         {Axis::T, "T"}, {Axis::gamma_a, "gamma_a"},
      {Axis::gamma_m, "gamma_m"}, {Axis::J, "J"}, {Axis::K, "K"},
      {Axis::delta_a, "delta_a"}, {Axis::delta_m, "delta_m"}, {Axis::g, "g"}};
  return names;
}

const std::vector<std::pair<Quantity, std::string>>& quantity_names() {
  static const std::vector<std::pair<Quantity, std::string>> names{
      {Quantity::qfi_global, "qfi_global"}, {Quantity::qfi_a1, "qfi_a1"},
      {Quantity::qfi_a2, "qfi_a2"},         {Quantity::qfi_m, "qfi_m"},
      {Quantity::ratios, "ratios"},         {Quantity::cfi_hom_q, "cfi_hom_q"},
      {Quantity::cfi_hom_p, "cfi_hom_p"},   {Quantity::cfi_het, "cfi_het"},
      {Quantity::cfi_ogm, "cfi_ogm"},       {Quantity::stability, "stability"}};
  return names;
}

const std::vector<std::string> diagnostic_columns{
    "m_abs2", "max_real_eig", "lyapunov_residual", "min_uncertainty_eig", "weak_drive",
    "spin_saturation"};

bool needs_fisher(const std::vector<Quantity>& qs) {
  return std::any_of(qs.begin(), qs.end(), [](Quantity q) { return q != Quantity::stability; });
}

}  // namespace

std::string to_string(Axis a) {
  for (const auto& [k, v] : axis_names())
    if (k == a) return v;
  return "?";
}

std::string to_string(Quantity q) {
  for (const auto& [k, v] : quantity_names())
    if (k == q) return v;
  return "?";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::a1: return "a1";
    case Mode::a2: return "a2";
    case Mode::m: return "m";
  }
  return "?";
}

Axis parse_axis(const std::string& name) {
  for (const auto& [k, v] : axis_names())
    if (v == name) return k;
  throw ConfigError("unknown sweep axis '" + name + "'");
}

Quantity parse_quantity(const std::string& name) {
  for (const auto& [k, v] : quantity_names())
    if (v == name) return k;
  throw ConfigError("unknown quantity '" + name + "'");
}

Mode parse_mode(const std::string& name) {
  if (name == "a1") return Mode::a1;
  if (name == "a2") return Mode::a2;
  if (name == "m") return Mode::m;
  throw ConfigError("unknown mode '" + name + "' (expected a1, a2 or m)");
}

void apply_axis(SystemParams& p, Axis axis, double value) {
  switch (axis) {
    case Axis::P_l: p.P_l = value; break;
    case Axis::T: p.T = value; break;
    case Axis::gamma_a: p.gamma_a1 = p.gamma_a2 = value; break;
    case Axis::gamma_m: p.gamma_m = value; break;
    case Axis::J: p.J = value; break;
    case Axis::K: p.K = value; break;
    case Axis::delta_a: set_cavity_detuning(p, value); break;
    case Axis::delta_m: set_magnon_detuning(p, value); break;
    case Axis::g: p.g = value; break;
  }
}

double axis_value(const SystemParams& p, Axis axis) {
  switch (axis) {
    case Axis::P_l: return p.P_l;
    case Axis::T: return p.T;
    case Axis::gamma_a: return p.gamma_a2;
    case Axis::gamma_m: return p.gamma_m;
    case Axis::J: return p.J;
    case Axis::K: return p.K;
    case Axis::delta_a: return p.delta_a2;
    case Axis::delta_m: return p.delta_m;
    case Axis::g: return p.g;
  }
  return nan_v;
}

std::vector<double> AxisRange::grid() const {
  if (!values.empty()) return values;
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    if (scale == Scale::log) {
      out[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
    } else {
      out[i] = start + t * (stop - start);
    }
  }
  // land exactly on the endpoints
  out.front() = start;
  out.back() = stop;
  return out;
}

void AxisRange::validate() const {
  for (double v : values)
    if (!std::isfinite(v)) throw ConfigError("axis values must be finite");
  if (!values.empty()) return;
  if (points < 2) throw ConfigError("axis " + to_string(axis) + ": need at least 2 points");
  if (!(start < stop)) throw ConfigError("axis " + to_string(axis) + ": start must be < stop");
  if (scale == Scale::log && !(start > 0.0)) {
    throw ConfigError("axis " + to_string(axis) + ": log scale needs positive endpoints");
  }
}

void SweepSpec::validate() const {
  primary.validate();
  if (secondary) {
    secondary->validate();
    if (secondary->axis == primary.axis) throw ConfigError("the two sweep axes must differ");
  }
  if (quantities.empty()) throw ConfigError("sweep needs at least one quantity");
}

std::size_t SweepSpec::grid_size() const {
  const std::size_t nx = primary.grid().size();
  return secondary ? nx * secondary->grid().size() : nx;
}

std::size_t SweepResult::ok_count() const {
  return static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const SweepRecord& r) { return r.status == "ok"; }));
}

std::size_t SweepResult::skipped_count() const { return records.size() - ok_count(); }

std::size_t SweepResult::column(const std::string& name) const {
  const auto it = std::find(value_columns.begin(), value_columns.end(), name);
  if (it == value_columns.end()) throw std::out_of_range("no column " + name);
  return static_cast<std::size_t>(it - value_columns.begin());
}

std::vector<std::string> value_columns(const std::vector<Quantity>& quantities) {
  std::vector<std::string> cols;
  for (Quantity q : quantities) {
    switch (q) {
      case Quantity::ratios:
        cols.insert(cols.end(), {"xi_a1", "xi_a2", "xi_m"});
        break;
      case Quantity::stability:
        cols.insert(cols.end(), {"stable", "hurwitz_ok", "marginal"});
        break;
      case Quantity::cfi_ogm:
        cols.insert(cols.end(), {"cfi_ogm", "ogm_theta", "ogm_r"});
        break;
      default: cols.push_back(to_string(q));
    }
  }
  cols.insert(cols.end(), diagnostic_columns.begin(), diagnostic_columns.end());
  return cols;
}

namespace {

struct PointContext {
  const SweepSpec& spec;
  const std::vector<std::string>& cols;
  bool gate;  ///< unstable points are skipped
};

void put(SweepRecord& rec, const std::vector<std::string>& cols, const std::string& name,
         double v) {
  const auto it = std::find(cols.begin(), cols.end(), name);
  if (it != cols.end()) rec.values[it - cols.begin()] = v;
}

void evaluate_point(const PointContext& ctx, const SystemParams& q, SweepRecord& rec) {
  const auto& cols = ctx.cols;
  rec.values.assign(cols.size(), nan_v);
  try {
    const auto branches = steady_branches(q);
    if (branches.empty()) throw NoSteadyState("no admissible steady state");
    if (branches.size() > 1) throw MultistableRegime("several admissible steady states");
    const SteadyState& ss = branches.front();
    const auto lin = linearization_check(ss);
    put(rec, cols, "m_abs2", ss.m_abs2);
    put(rec, cols, "weak_drive", lin.weak_drive ? 1.0 : 0.0);
    put(rec, cols, "spin_saturation", lin.spin_saturation ? 1.0 : 0.0);

    const Mat6 A = build_drift(q, ss);
    const auto stab = check_stability(A);
    put(rec, cols, "max_real_eig", stab.max_real_eig);
    put(rec, cols, "stable", stab.stable ? 1.0 : 0.0);
    put(rec, cols, "hurwitz_ok", stab.hurwitz_ok ? 1.0 : 0.0);
    put(rec, cols, "marginal", stab.marginal ? 1.0 : 0.0);
    if (stab.marginal || !stab.stable) {
      if (ctx.gate) rec.status = stab.marginal ? "marginal" : "unstable";
      return;
    }

    const Mat6 D = build_diffusion(q);
    GaussianState state;
    state.mean = mean_quadratures(ss);
    state.cov = solve_lyapunov(A, D);
    put(rec, cols, "lyapunov_residual", lyapunov_residual(A, state.cov, D));
    put(rec, cols, "min_uncertainty_eig", min_uncertainty_eigenvalue(state.cov));
    if (!needs_fisher(ctx.spec.quantities)) return;

    const Sensitivity sens = sensitivity(q, ctx.spec.derivative);
    const Mode mode = ctx.spec.cfi_mode;
    double Fg = nan_v;
    auto global = [&] {
      if (std::isnan(Fg)) Fg = qfi_global(state, sens);
      return Fg;
    };
    for (Quantity qty : ctx.spec.quantities) {
      switch (qty) {
        case Quantity::qfi_global: put(rec, cols, "qfi_global", global()); break;
        case Quantity::qfi_a1: put(rec, cols, "qfi_a1", qfi_subsystem(state, sens, Mode::a1)); break;
        case Quantity::qfi_a2: put(rec, cols, "qfi_a2", qfi_subsystem(state, sens, Mode::a2)); break;
        case Quantity::qfi_m: put(rec, cols, "qfi_m", qfi_subsystem(state, sens, Mode::m)); break;
        case Quantity::ratios: {
          const double F = global();
          put(rec, cols, "xi_a1", qfi_subsystem(state, sens, Mode::a1) / F);
          put(rec, cols, "xi_a2", qfi_subsystem(state, sens, Mode::a2) / F);
          put(rec, cols, "xi_m", qfi_subsystem(state, sens, Mode::m) / F);
          break;
        }
        case Quantity::cfi_hom_q:
          put(rec, cols, "cfi_hom_q", cfi(state, sens, mode, MeasurementKind::HomodyneQ));
          break;
        case Quantity::cfi_hom_p:
          put(rec, cols, "cfi_hom_p", cfi(state, sens, mode, MeasurementKind::HomodyneP));
          break;
        case Quantity::cfi_het:
          put(rec, cols, "cfi_het", cfi(state, sens, mode, MeasurementKind::Heterodyne));
          break;
        case Quantity::cfi_ogm: {
          const auto ogm = optimal_gaussian(state, sens, mode);
          put(rec, cols, "cfi_ogm", ogm.F);
          put(rec, cols, "ogm_theta", ogm.spec.theta);
          put(rec, cols, "ogm_r", ogm.spec.r);
          break;
        }
        case Quantity::stability: break;
      }
    }
  } catch (const Error& e) {
    rec.status = e.code();
  } catch (const std::exception&) {
    rec.status = "error";
  }
}

SweepResult run_grid(const SweepSpec& spec, const SystemParams& base, unsigned jobs, bool gate) {
  spec.validate();
  validate(base);
  SweepResult result;
  result.spec = spec;
  result.base = base;
  result.value_columns = value_columns(spec.quantities);

  const auto xs = spec.primary.grid();
  const std::vector<double> ys = spec.secondary ? spec.secondary->grid() : std::vector<double>{nan_v};
  const std::size_t n = xs.size() * ys.size();
  result.records.resize(n);

  const PointContext ctx{spec, result.value_columns, gate};
  auto work = [&](std::size_t i) {
    // secondary axis is the outer loop
    const std::size_t ix = i % xs.size(), iy = i / xs.size();
    SweepRecord& rec = result.records[i];
    rec.index = i;
    rec.x = xs[ix];
    rec.y = ys[iy];
    SystemParams q = base;
    apply_axis(q, spec.primary.axis, rec.x);
    if (spec.secondary) apply_axis(q, spec.secondary->axis, rec.y);
    evaluate_point(ctx, q, rec);
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) work(i);
    });
  }
  for (auto& th : pool) th.join();
  return result;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const SystemParams& base, unsigned jobs) {
  return run_grid(spec, base, jobs, true);
}

SweepResult stability_map(const SweepSpec& spec, const SystemParams& base, unsigned jobs) {
  SweepSpec s = spec;
  s.quantities = {Quantity::stability};
  return run_grid(s, base, jobs, false);
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5a", "fig5b", "fig6a", "fig6b",
          "fig7a", "fig7b", "fig7c", "fig7d"};
}

SweepSpec figure_preset(const std::string& name) {
  const std::vector<Quantity> all_qfi{Quantity::qfi_global, Quantity::qfi_a1, Quantity::qfi_a2,
                                      Quantity::qfi_m};
  const std::vector<Quantity> measurements{Quantity::qfi_a2, Quantity::cfi_hom_q,
                                           Quantity::cfi_hom_p, Quantity::cfi_het,
                                           Quantity::cfi_ogm};
  auto lin = [](Axis a, double lo, double hi, int n) {
    return AxisRange{a, lo, hi, n, Scale::linear, {}};
  };
  const AxisRange power{Axis::P_l, 1e-3, 1.0, 31, Scale::log, {}};

  SweepSpec s;
  s.name = name;
  if (name == "fig2") {
    s.primary = power;
    s.secondary = AxisRange{Axis::T, 0, 0, 0, Scale::linear, {10e-3, 100e-3, 200e-3}};
    s.quantities = all_qfi;
    s.range_note = "P_l from 1 mW to 1 W (log), T in {10, 100, 200} mK";
  } else if (name == "fig3") {
    s.primary = lin(Axis::gamma_a, 1 * MHz, 20 * MHz, 20);
    s.secondary = lin(Axis::gamma_m, 10 * MHz, 80 * MHz, 15);
    s.quantities = {Quantity::qfi_global};
    s.approximate_ranges = true;
    s.range_note = "gamma_a 2pi x [1, 20] MHz, gamma_m 2pi x [10, 80] MHz, read off the density plot";
  } else if (name == "fig4") {
    s.primary = lin(Axis::K, 0.0, 10 * uHz, 21);
    s.secondary = lin(Axis::J, 0.0, 60 * MHz, 21);
    s.quantities = all_qfi;
    s.approximate_ranges = true;
    s.range_note = "K 2pi x [0, 10] uHz, J 2pi x [0, 60] MHz, read off the density plot";
  } else if (name == "fig5a") {
    s.primary = lin(Axis::delta_a, -150 * MHz, 150 * MHz, 301);
    s.quantities = all_qfi;
    s.approximate_ranges = true;
    s.range_note = "delta_a 2pi x [-150, 150] MHz, both cavities detuned together";
  } else if (name == "fig5b") {
    s.primary = lin(Axis::delta_m, -200 * MHz, 200 * MHz, 201);
    s.quantities = all_qfi;
    s.approximate_ranges = true;
    s.range_note = "delta_m 2pi x [-200, 200] MHz";
  } else if (name == "fig6a") {
    s.primary = lin(Axis::J, 0.0, 60 * MHz, 31);
    s.quantities = {Quantity::ratios};
    s.approximate_ranges = true;
    s.range_note = "J 2pi x [0, 60] MHz, same extent as the other tunneling sweeps";
  } else if (name == "fig6b") {
    s.primary = lin(Axis::K, 0.0, 20 * uHz, 41);
    s.quantities = {Quantity::ratios};
    s.approximate_ranges = true;
    s.range_note = "K 2pi x [0, 20] uHz";
  } else if (name == "fig7a") {
    s.primary = power;
    s.quantities = measurements;
    s.range_note = "P_l from 1 mW to 1 W (log)";
  } else if (name == "fig7b") {
    s.primary = lin(Axis::J, 0.0, 60 * MHz, 31);
    s.quantities = measurements;
    s.approximate_ranges = true;
    s.range_note = "J 2pi x [0, 60] MHz";
  } else if (name == "fig7c") {
    s.primary = lin(Axis::K, 0.0, 10 * uHz, 21);
    s.quantities = measurements;
    s.approximate_ranges = true;
    s.range_note = "K 2pi x [0, 10] uHz";
  } else if (name == "fig7d") {
    s.primary = lin(Axis::T, 10e-3, 200e-3, 20);
    s.quantities = measurements;
    s.approximate_ranges = true;
    s.range_note = "T from 10 mK to 200 mK";
  } else {
    throw UnknownPreset("unknown preset '" + name + "'");
  }
  s.cfi_mode = Mode::a2;
  return s;
}

unsigned jobs_from_environment() {
  const char* env = std::getenv("MAGNON_FISHER_JOBS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) return 1;
  return static_cast<unsigned>(v);
}

}  // namespace magnon
