#include "magnon_fisher/emit.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <nlohmann/json.hpp>
#include <sstream>

#include "magnon_fisher/config.hpp"
#include "magnon_fisher/errors.hpp"

namespace magnon {

using ojson = nlohmann::ordered_json;

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("unknown output format '" + name + "'");
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(const SweepResult& result, std::ostream& os) {
  os << "index," << to_string(result.spec.primary.axis);
  if (result.spec.secondary) os << ',' << to_string(result.spec.secondary->axis);
  os << ",status";
  for (const auto& c : result.value_columns) os << ',' << c;
  os << '\n';
  for (const auto& r : result.records) {
    os << r.index << ',' << format_number(r.x);
    if (result.spec.secondary) os << ',' << format_number(r.y);
    os << ',' << r.status;
    for (double v : r.values) os << ',' << format_number(v);
    os << '\n';
  }
}

std::string to_csv(const SweepResult& result) {
  std::ostringstream os;
  write_csv(result, os);
  return os.str();
}

namespace {

ojson number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

ojson axis_json(const AxisRange& a) {
  ojson j;
  j["name"] = to_string(a.axis);
  if (a.values.empty()) {
    j["start"] = a.start;
    j["stop"] = a.stop;
    j["points"] = a.points;
    j["scale"] = a.scale == Scale::log ? "log" : "linear";
  } else {
    j["values"] = a.values;
  }
  return j;
}

}  // namespace

std::string to_json(const SweepResult& result) {
  const auto& s = result.spec;
  const auto& p = result.base;
  ojson meta;
  meta["tool"] = "magnon-fisher";
  meta["version"] = tool_version;
  meta["config_hash"] = config_hash(s, p);
  meta["sweep"] = s.name;
  meta["axis"] = axis_json(s.primary);
  if (s.secondary) meta["secondary_axis"] = axis_json(*s.secondary);
  meta["approximate_ranges"] = s.approximate_ranges;
  meta["range_note"] = s.range_note;
  meta["cfi_mode"] = to_string(s.cfi_mode);
  meta["derivative"] = to_string(s.derivative);
  meta["units"] = "rates and detunings in rad/s, power in W, temperature in K";
  meta["constants"] = {{"hbar", constants::hbar},
                       {"k_B", constants::k_B},
                       {"mu0", constants::mu0},
                       {"gamma_e", constants::gamma_e},
                       {"rho_yig", constants::rho_yig}};
  meta["params"] = {{"omega_a1", p.omega_a1}, {"omega_a2", p.omega_a2}, {"omega_m", p.omega_m},
                    {"delta_a1", p.delta_a1}, {"delta_a2", p.delta_a2}, {"delta_m", p.delta_m},
                    {"gamma_a1", p.gamma_a1}, {"gamma_a2", p.gamma_a2}, {"gamma_m", p.gamma_m},
                    {"J", p.J},               {"g", p.g},               {"K", p.K},
                    {"P_l", p.P_l},           {"omega_l", p.omega_l},   {"T", p.T}};
  meta["grid_size"] = result.records.size();
  meta["rows"] = result.ok_count();
  meta["skipped"] = result.skipped_count();

  ojson records = ojson::array();
  for (const auto& r : result.records) {
    ojson j;
    j["index"] = r.index;
    j[to_string(s.primary.axis)] = number(r.x);
    if (s.secondary) j[to_string(s.secondary->axis)] = number(r.y);
    j["status"] = r.status;
    for (std::size_t c = 0; c < result.value_columns.size(); ++c) {
      j[result.value_columns[c]] = number(r.values[c]);
    }
    records.push_back(std::move(j));
  }
  ojson root;
  root["metadata"] = std::move(meta);
  root["columns"] = result.value_columns;
  root["records"] = std::move(records);
  return root.dump(2) + "\n";
}

void emit(const SweepResult& result, Format format, const std::string& path) {
  const std::string text = format == Format::csv ? to_csv(result) : to_json(result);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) throw IoError("failed writing '" + path + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ConfigError("bad number '" + s + "' in CSV");
  return v;
}

}  // namespace

SweepResult read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty CSV");
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "index") throw ConfigError("not a sweep CSV");
  SweepResult res;
  res.spec.primary.axis = parse_axis(header[1]);
  std::size_t status_col = 2;
  if (header[2] != "status") {
    AxisRange sec;
    sec.axis = parse_axis(header[2]);
    res.spec.secondary = sec;
    status_col = 3;
  }
  if (header.size() <= status_col || header[status_col] != "status") {
    throw ConfigError("CSV header lacks a status column");
  }
  res.value_columns.assign(header.begin() + static_cast<long>(status_col) + 1, header.end());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw ConfigError("ragged CSV row");
    SweepRecord r;
    r.index = std::stoull(cells[0]);
    r.x = parse_number(cells[1]);
    r.y = res.spec.secondary ? parse_number(cells[2]) : std::numeric_limits<double>::quiet_NaN();
    r.status = cells[status_col];
    for (std::size_t c = status_col + 1; c < cells.size(); ++c) r.values.push_back(parse_number(cells[c]));
    res.records.push_back(std::move(r));
  }
  return res;
}

}  // namespace magnon
