#pragma once

#include <iosfwd>
#include <string>

#include "magnon_fisher/sweep.hpp"

namespace magnon {

inline constexpr const char* tool_version = "0.1.0";

enum class Format { csv, json };
Format parse_format(const std::string& name);

/// %.17g, with "nan" and "inf"/"-inf" for non-finite values.
std::string format_number(double v);

/// Header "index,<axis>[,<axis2>],status,<value columns>" and one line per
/// grid point, skipped points included.
void write_csv(const SweepResult& result, std::ostream& os);
std::string to_csv(const SweepResult& result);

/// Records plus run metadata (config hash, constants, tool version).
std::string to_json(const SweepResult& result);

/// Writes to `path` ("-" for stdout). Throws IoError.
void emit(const SweepResult& result, Format format, const std::string& path);

/// Reads a CSV written by write_csv back into a result. Only the columns
/// and records are restored; spec fields other than the axes are defaults.
SweepResult read_csv(std::istream& is);

}  // namespace magnon
