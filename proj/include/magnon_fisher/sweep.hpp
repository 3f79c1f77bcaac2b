#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "magnon_fisher/fisher.hpp"
#include "magnon_fisher/measure.hpp"

namespace magnon {

enum class Axis { P_l, T, gamma_a, gamma_m, J, K, delta_a, delta_m, g };
enum class Scale { linear, log };
enum class Quantity {
  qfi_global,
  qfi_a1,
  qfi_a2,
  qfi_m,
  ratios,
  cfi_hom_q,
  cfi_hom_p,
  cfi_het,
  cfi_ogm,
  stability
};

std::string to_string(Axis a);
std::string to_string(Quantity q);
std::string to_string(Mode m);
Axis parse_axis(const std::string& name);
Quantity parse_quantity(const std::string& name);
Mode parse_mode(const std::string& name);

/// Sets one swept parameter. gamma_a and delta_a move both cavities.
void apply_axis(SystemParams& p, Axis axis, double value);
double axis_value(const SystemParams& p, Axis axis);

struct AxisRange {
  Axis axis = Axis::g;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;
  Scale scale = Scale::linear;
  /// When non-empty, used verbatim instead of start/stop/points.
  std::vector<double> values;

  std::vector<double> grid() const;
  void validate() const;  ///< throws ConfigError
};

struct SweepSpec {
  std::string name = "custom";
  AxisRange primary;
  std::optional<AxisRange> secondary;
  std::vector<Quantity> quantities;
  Mode cfi_mode = Mode::a2;
  DerivativeMethod derivative = DerivativeMethod::analytic;
  /// Free-text note on how the axis extents were chosen.
  std::string range_note;
  bool approximate_ranges = false;

  void validate() const;
  std::size_t grid_size() const;
};

/// One grid point. `status` is "ok" or the error code that caused the skip.
struct SweepRecord {
  std::size_t index = 0;
  double x = 0.0;
  double y = 0.0;  ///< NaN without a secondary axis
  std::string status = "ok";
  std::vector<double> values;  ///< aligned with SweepResult::value_columns
};

struct SweepResult {
  SweepSpec spec;
  SystemParams base;
  std::vector<std::string> value_columns;
  std::vector<SweepRecord> records;  ///< ordered by grid index, skips included

  std::size_t ok_count() const;
  std::size_t skipped_count() const;
  /// Index of a value column; throws std::out_of_range if absent.
  std::size_t column(const std::string& name) const;
};

/// Value columns produced for a quantity list. Diagnostics (m_abs2,
/// max_real_eig, lyapunov_residual, min_uncertainty_eig, weak_drive,
/// spin_saturation) are always appended.
std::vector<std::string> value_columns(const std::vector<Quantity>& quantities);

/// Evaluates every grid point on `jobs` worker threads (0 = hardware
/// concurrency). Unstable, multistable or otherwise failing points become
/// skip records carrying the error code.
SweepResult run_sweep(const SweepSpec& spec, const SystemParams& base, unsigned jobs = 1);

/// Stability verdicts over the grid. Unstable points are ordinary records
/// here; only points without a unique steady state are skipped.
SweepResult stability_map(const SweepSpec& spec, const SystemParams& base, unsigned jobs = 1);

std::vector<std::string> preset_names();
/// Throws UnknownPreset.
SweepSpec figure_preset(const std::string& name);

/// Worker count from MAGNON_FISHER_JOBS, or 1 when unset or malformed.
unsigned jobs_from_environment();

}  // namespace magnon
