#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "magnon_fisher/config.hpp"
#include "magnon_fisher/emit.hpp"
#include "magnon_fisher/errors.hpp"
#include "magnon_fisher/sweep.hpp"

using namespace magnon;
using constants::two_pi;

namespace {

SweepSpec small_spec() {
  SweepSpec s;
  s.name = "small";
  s.primary = {Axis::J, 0.0, two_pi * 60e6, 7, Scale::linear, {}};
  s.secondary = AxisRange{Axis::T, 0.01, 0.2, 3, Scale::linear, {}};
  s.quantities = {Quantity::qfi_global, Quantity::ratios, Quantity::cfi_ogm, Quantity::stability};
  return s;
}

}  // namespace

TEST_CASE("axis grids") {
  AxisRange lin{Axis::P_l, 1.0, 3.0, 3, Scale::linear, {}};
  CHECK(lin.grid() == std::vector<double>{1.0, 2.0, 3.0});
  AxisRange lg{Axis::P_l, 1e-3, 1.0, 4, Scale::log, {}};
  const auto g = lg.grid();
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 1e-3);
  CHECK(g[1] == doctest::Approx(1e-2));
  CHECK(g[3] == 1.0);
  AxisRange bad{Axis::P_l, 0.0, 1.0, 4, Scale::log, {}};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  AxisRange one{Axis::P_l, 0.0, 1.0, 0, Scale::linear, {}};
  CHECK_THROWS_AS(one.validate(), ConfigError);
}

TEST_CASE("sweep is independent of the worker count") {
  const SweepSpec s = small_spec();
  const std::string one = to_csv(run_sweep(s, baseline(), 1));
  const std::string four = to_csv(run_sweep(s, baseline(), 4));
  const std::string many = to_csv(run_sweep(s, baseline(), 13));
  CHECK(one == four);
  CHECK(one == many);
}

TEST_CASE("sweep layout") {
  const SweepSpec s = small_spec();
  const SweepResult r = run_sweep(s, baseline(), 2);
  REQUIRE(r.records.size() == 21);
  CHECK(r.ok_count() + r.skipped_count() == 21);
  // secondary axis is the outer loop
  CHECK(r.records[1].x > r.records[0].x);
  CHECK(r.records[1].y == r.records[0].y);
  CHECK(r.records[7].y > r.records[0].y);
  CHECK(r.column("xi_a2") > r.column("qfi_global"));
  CHECK_NOTHROW(r.column("ogm_r"));
  CHECK_NOTHROW(r.column("lyapunov_residual"));
  CHECK_THROWS_AS(r.column("nope"), std::out_of_range);
  for (const auto& rec : r.records) CHECK(rec.values.size() == r.value_columns.size());
}

TEST_CASE("every point skipped still yields a full grid") {
  SweepSpec s;
  s.primary = {Axis::delta_m, -two_pi * 120e6, -two_pi * 90e6, 5, Scale::linear, {}};
  s.quantities = {Quantity::qfi_global};
  const SweepResult r = run_sweep(s, baseline(), 3);
  CHECK(r.records.size() == 5);
  CHECK(r.skipped_count() == 5);
  for (const auto& rec : r.records) {
    CHECK(rec.status == "multistable");
    CHECK(std::isnan(rec.values[0]));
  }
}

TEST_CASE("stability map keeps unstable points") {
  SweepSpec s;
  s.primary = {Axis::gamma_m, -two_pi * 10e6, two_pi * 40e6, 6, Scale::linear, {}};
  s.quantities = {Quantity::stability};
  SystemParams base = baseline();
  base.P_l = 1e-3;
  // negative damping fails validation, so the first points become domain errors
  const SweepResult r = stability_map(s, base, 2);
  CHECK(r.records.size() == 6);
  CHECK(r.records.back().status == "ok");
}

TEST_CASE("CSV round trip") {
  const SweepResult r = run_sweep(small_spec(), baseline(), 2);
  const std::string text = to_csv(r);
  std::istringstream is(text);
  const SweepResult back = read_csv(is);
  CHECK(back.records.size() == r.records.size());
  SweepResult rebuilt = back;
  rebuilt.spec = r.spec;
  CHECK(to_csv(rebuilt) == text);
}

TEST_CASE("empty sweep writes only the header") {
  SweepResult r;
  r.spec.primary.axis = Axis::K;
  r.value_columns = value_columns({Quantity::qfi_m});
  const std::string text = to_csv(r);
  CHECK(text.find('\n') == text.size() - 1);
  CHECK(text.rfind("index,K,status,qfi_m,", 0) == 0);
  std::istringstream is(text);
  CHECK(read_csv(is).records.empty());
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("JSON output carries metadata") {
  const SweepSpec s = figure_preset("fig6a");
  const SweepResult r = run_sweep(s, baseline(), 2);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["metadata"]["version"] == tool_version);
  CHECK(j["metadata"]["config_hash"].get<std::string>().size() == 16);
  CHECK(j["metadata"]["config_hash"] == config_hash(s, baseline()));
  CHECK(j["records"].size() == s.grid_size());
  CHECK(j["metadata"].contains("range_note"));
  CHECK(j["metadata"]["constants"]["hbar"] == constants::hbar);
  SystemParams other = baseline();
  other.T = 0.02;
  CHECK(config_hash(s, other) != config_hash(s, baseline()));
}

TEST_CASE("presets") {
  const auto names = preset_names();
  CHECK(names.size() == 11);
  for (const auto& n : names) {
    const SweepSpec s = figure_preset(n);
    CHECK_NOTHROW(s.validate());
    CHECK(s.grid_size() > 0);
  }
  CHECK_THROWS_AS(figure_preset("fig9"), UnknownPreset);
}

TEST_CASE("unit parsing") {
  CHECK(parse_value("40 MHz", Dimension::angular_frequency) == doctest::Approx(two_pi * 40e6));
  CHECK(parse_value("2uHz", Dimension::angular_frequency) == doctest::Approx(two_pi * 2e-6));
  CHECK(parse_value("1e3 rad/s", Dimension::angular_frequency) == 1e3);
  CHECK(parse_value("500 mW", Dimension::power) == doctest::Approx(0.5));
  CHECK(parse_value("10 mK", Dimension::temperature) == doctest::Approx(0.01));
  CHECK(parse_value("0.25", Dimension::power) == 0.25);
  CHECK_THROWS_AS(parse_value("3 furlongs", Dimension::power), ConfigError);
  CHECK_THROWS_AS(parse_value("10 mK", Dimension::power), ConfigError);
  CHECK_THROWS_AS(parse_value("MHz", Dimension::angular_frequency), ConfigError);
}

TEST_CASE("parameter overrides") {
  SystemParams p = baseline();
  apply_override(p, "delta_a=30 MHz");
  CHECK(p.delta_a1 == doctest::Approx(two_pi * 30e6));
  CHECK(p.omega_a2 == doctest::Approx(p.omega_l + two_pi * 30e6));
  apply_override(p, "omega_l = 9 GHz");
  CHECK(consistency_warnings(p).empty());
  CHECK_THROWS_AS(apply_override(p, "zeta=1"), ConfigError);
  CHECK_THROWS_AS(apply_override(p, "T"), ConfigError);
}

TEST_CASE("TOML configuration") {
  const RunConfig c = parse_config(R"(
[params]
P_l = "1 W"
T = "50 mK"
gamma_a2_intrinsic = "2 MHz"
gamma_a2_external = "3 MHz"
J = 1.0e8

[sweep]
name = "tunneling"
quantities = ["qfi_global", "ratios"]
mode = "a1"
derivative = "stencil"

[sweep.axis]
name = "J"
start = "0 MHz"
stop = "60 MHz"
points = 4
)");
  CHECK(c.params.P_l == 1.0);
  CHECK(c.params.T == doctest::Approx(0.05));
  CHECK(c.params.gamma_a2 == doctest::Approx(two_pi * 5e6));
  CHECK(c.params.J == 1e8);
  REQUIRE(c.sweep.has_value());
  CHECK(c.sweep->name == "tunneling");
  CHECK(c.sweep->primary.axis == Axis::J);
  CHECK(c.sweep->primary.stop == doctest::Approx(two_pi * 60e6));
  CHECK(c.sweep->cfi_mode == Mode::a1);
  CHECK(c.sweep->derivative == DerivativeMethod::stencil);
  CHECK(c.sweep->quantities.size() == 2);

  const RunConfig preset = parse_config("[sweep]\npreset = \"fig3\"\n");
  CHECK(preset.sweep->secondary.has_value());
  const RunConfig values = parse_config(
      "[sweep]\nquantities=[\"qfi_m\"]\n[sweep.axis]\nname=\"T\"\nvalues=[\"10 mK\", 0.1]\n");
  CHECK(values.sweep->primary.grid() == std::vector<double>{0.01, 0.1});

  CHECK_THROWS_AS(parse_config("[params]\nP_l = \"1 K\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[params]\nwat = 1.0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[params\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[params]\ngamma_a2_intrinsic = 1.0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[sweep]\nname = \"x\"\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[sweep]\npreset = \"nope\"\n"), UnknownPreset);
  CHECK_THROWS_AS(load_config("/nonexistent/config.toml"), IoError);
}

TEST_CASE("worker count from the environment") {
  CHECK(jobs_from_environment() >= 1);
}
