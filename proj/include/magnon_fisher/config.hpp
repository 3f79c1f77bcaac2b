#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "magnon_fisher/sweep.hpp"

namespace magnon {

enum class Dimension { angular_frequency, power, temperature };

/// Parses "40 MHz", "2 uHz", "500 mW", "10 mK", "1.2e9 rad/s" or a bare
/// number (already in rad/s, W or K). Frequencies given in Hz units are
/// multiplied by 2π. Throws ConfigError on unknown or mismatched units.
double parse_value(const std::string& text, Dimension dim);

Dimension parameter_dimension(const std::string& key);
Dimension axis_dimension(Axis axis);

/// Sets a parameter by its configuration key. Detunings also move the
/// matching absolute frequency; omega_l moves all three absolute
/// frequencies so that the detunings stay fixed. gamma_a and delta_a set
/// both cavities.
void set_parameter(SystemParams& p, const std::string& key, double value);
void set_parameter(SystemParams& p, const std::string& key, const std::string& text);
/// "key=value" as used by --set.
void apply_override(SystemParams& p, const std::string& assignment);

struct RunConfig {
  SystemParams params;
  std::optional<SweepSpec> sweep;
};

/// TOML input: a [params] table of overrides on the baseline and an
/// optional [sweep] table (preset, name, quantities, mode, derivative,
/// [sweep.axis], [sweep.secondary]).
RunConfig parse_config(const std::string& toml_text);
RunConfig load_config(const std::string& path);

/// Canonical text of a run, hashed into the emitted metadata.
std::string canonical_text(const SweepSpec& spec, const SystemParams& p);
std::uint64_t fnv1a64(const std::string& text);
std::string config_hash(const SweepSpec& spec, const SystemParams& p);

}  // namespace magnon
