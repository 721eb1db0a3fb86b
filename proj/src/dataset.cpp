// Copyright 2026 The scourbench Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scourbench/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "csv.hpp"
#include "scourbench/errors.hpp"

namespace scourbench {
namespace {

enum Column : std::size_t {
  kId,
  kKind,
  kYs,
  kWidth,
  kLength,
  kDepth,
  kVelocity,
  kCritical,
  kAngle,
  kD50,
  kShape,
  kSpacing,
  kMethod,
  kColumnCount,
};

constexpr std::array<std::string_view, kColumnCount> kColumns = {
    "id",          "kind",         "ys_measured_m",        "pier_width_m",
    "pier_length_m", "flow_depth_m", "velocity_ms",        "critical_velocity_ms",
    "attack_angle_deg", "d50_mm",  "pier_shape",           "pier_spacing_m",
    "measurement_method",
};

constexpr std::string_view kFlagsColumn = "flags";

constexpr std::array<std::pair<RecordFlag, std::string_view>, 5> kFlagNames = {{
    {RecordFlag::L_imputed, "L_imputed"},
    {RecordFlag::S_defaulted, "S_defaulted"},
    {RecordFlag::Vc_imputed, "Vc_imputed"},
    {RecordFlag::excluded_zero_y1, "excluded_zero_y1"},
    {RecordFlag::excluded_zero_V1, "excluded_zero_V1"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Thrown inside row parsing and converted to a RowError.
struct RowProblem {
  std::string message;
};

std::optional<double> optional_number(const std::string& cell, std::string_view column) {
  const auto text = trim(cell);
  if (text.empty()) return std::nullopt;
  const auto value = csv::parse_number(text);
  if (!value) throw RowProblem{fmt::format("{}: '{}' is not a number", column, text)};
  if (!std::isfinite(*value)) throw RowProblem{fmt::format("{}: value is not finite", column)};
  return value;
}

double required_number(const std::string& cell, std::string_view column) {
  const auto value = optional_number(cell, column);
  if (!value) throw RowProblem{fmt::format("{}: required value is empty", column)};
  return *value;
}

void require(bool ok, std::string_view column, std::string_view what) {
  if (!ok) throw RowProblem{fmt::format("{}: {}", column, what)};
}

PierScourRecord parse_row(const std::vector<std::string>& cells,
                          const std::array<std::size_t, kColumnCount>& at,
                          std::optional<std::size_t> flags_at, DataSource expected) {
  PierScourRecord r;
  r.id = std::string(trim(cells[at[kId]]));
  require(!r.id.empty(), "id", "required value is empty");

  const auto kind_text = trim(cells[at[kKind]]);
  if (!kind_text.empty()) {
    const auto kind = parse_source(kind_text);
    require(kind.has_value(), "kind", "expected 'lab' or 'field'");
    require(*kind == expected, "kind",
            fmt::format("row is '{}' in a {} file", kind_text, source_name(expected)));
  }
  r.kind = expected;

  r.ys_measured = required_number(cells[at[kYs]], "ys_measured_m");
  require(r.ys_measured >= 0.0, "ys_measured_m", "must be >= 0");
  r.B = required_number(cells[at[kWidth]], "pier_width_m");
  require(r.B > 0.0, "pier_width_m", "must be > 0");
  r.L = optional_number(cells[at[kLength]], "pier_length_m");
  if (r.L) require(*r.L > 0.0, "pier_length_m", "must be > 0");
  r.y1 = required_number(cells[at[kDepth]], "flow_depth_m");
  require(r.y1 >= 0.0, "flow_depth_m", "must be >= 0");
  r.V1 = required_number(cells[at[kVelocity]], "velocity_ms");
  require(r.V1 >= 0.0, "velocity_ms", "must be >= 0");
  r.Vc = optional_number(cells[at[kCritical]], "critical_velocity_ms");
  if (r.Vc) require(*r.Vc > 0.0, "critical_velocity_ms", "must be > 0");
  r.theta = optional_number(cells[at[kAngle]], "attack_angle_deg");
  if (r.theta) require(*r.theta >= 0.0 && *r.theta <= 90.0, "attack_angle_deg", "must be in [0, 90]");
  r.D50 = required_number(cells[at[kD50]], "d50_mm");
  require(r.D50 > 0.0, "d50_mm", "must be > 0");

  const auto shape_text = trim(cells[at[kShape]]);
  if (!shape_text.empty()) {
    r.shape = parse_shape(shape_text);
    require(r.shape.has_value(), "pier_shape", fmt::format("unknown shape '{}'", shape_text));
  }
  r.S = optional_number(cells[at[kSpacing]], "pier_spacing_m");
  if (r.S) require(*r.S > 0.0, "pier_spacing_m", "must be > 0");
  const auto method = trim(cells[at[kMethod]]);
  if (!method.empty()) r.measurement_method = std::string(method);

  if (flags_at) {
    const auto flags = RecordFlags::parse(trim(cells[*flags_at]));
    require(flags.has_value(), "flags", "unknown flag");
    r.flags = *flags;
  }

  if (r.kind == DataSource::lab) {
    r.theta = 0.0;
    r.shape = ShapeTag::cylindrical;
  }
  return r;
}

}  // namespace

std::string RecordFlags::to_string() const {
  std::string out;
  for (const auto& [flag, name] : kFlagNames) {
    if (!has(flag)) continue;
    if (!out.empty()) out += '|';
    out += name;
  }
  return out;
}

std::optional<RecordFlags> RecordFlags::parse(std::string_view text) {
  RecordFlags flags;
  while (!text.empty()) {
    const auto bar = text.find('|');
    const auto part = trim(text.substr(0, bar));
    text = bar == std::string_view::npos ? std::string_view{} : text.substr(bar + 1);
    if (part.empty()) continue;
    const auto it = std::find_if(kFlagNames.begin(), kFlagNames.end(),
                                 [&](const auto& entry) { return entry.second == part; });
    if (it == kFlagNames.end()) return std::nullopt;
    flags.set(it->first);
  }
  return flags;
}

std::span<const std::string_view> csv_columns() { return kColumns; }

LoadResult parse_records(std::istream& in, DataSource kind, std::string_view origin) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || trim(line) != kSchemaHeader) {
    throw SchemaError(fmt::format("{}: first line must be '{}'", origin, kSchemaHeader));
  }
  ++line_no;

  std::optional<std::vector<std::string>> header;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    header = csv::split(line);
    break;
  }
  if (!header) throw SchemaError(fmt::format("{}: missing column header row", origin));

  std::array<std::size_t, kColumnCount> at;
  at.fill(SIZE_MAX);
  std::optional<std::size_t> flags_at;
  for (std::size_t i = 0; i < header->size(); ++i) {
    const auto name = trim((*header)[i]);
    if (name == kFlagsColumn) {
      flags_at = i;
      continue;
    }
    const auto it = std::find(kColumns.begin(), kColumns.end(), name);
    if (it == kColumns.end()) {
      throw SchemaError(fmt::format("{}: unknown column '{}'", origin, name));
    }
    const auto c = static_cast<std::size_t>(it - kColumns.begin());
    if (at[c] != SIZE_MAX) throw SchemaError(fmt::format("{}: duplicate column '{}'", origin, name));
    at[c] = i;
  }
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    if (at[c] == SIZE_MAX) {
      throw SchemaError(fmt::format("{}: missing required column '{}'", origin, kColumns[c]));
    }
  }

  LoadResult result;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = csv::split(line);
    if (!cells) {
      result.errors.push_back({line_no, "unterminated quoted field"});
      continue;
    }
    if (cells->size() != header->size()) {
      result.errors.push_back(
          {line_no, fmt::format("expected {} fields, found {}", header->size(), cells->size())});
      continue;
    }
    try {
      result.records.push_back(parse_row(*cells, at, flags_at, kind));
    } catch (const RowProblem& p) {
      result.errors.push_back({line_no, p.message});
    }
  }
  return result;
}

LoadResult load_records(const std::filesystem::path& path, DataSource kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  return parse_records(in, kind, path.string());
}

void write_records(std::ostream& out, std::span<const PierScourRecord> records) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? csv::format_number(*v) : std::string();
  };
  out << kSchemaHeader << '\n';
  for (const auto name : kColumns) out << name << ',';
  out << kFlagsColumn << '\n';
  for (const auto& r : records) {
    out << csv::quote(r.id) << ',' << source_name(r.kind) << ','
        << csv::format_number(r.ys_measured) << ',' << csv::format_number(r.B) << ','
        << opt(r.L) << ',' << csv::format_number(r.y1) << ',' << csv::format_number(r.V1)
        << ',' << opt(r.Vc) << ',' << opt(r.theta) << ',' << csv::format_number(r.D50) << ','
        << (r.shape ? csv::quote(format_shape(*r.shape)) : std::string()) << ',' << opt(r.S)
        << ',' << (r.measurement_method ? csv::quote(*r.measurement_method) : std::string())
        << ',' << r.flags.to_string() << '\n';
  }
}

PierScourRecord impute_length(PierScourRecord rec, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw ConfigError(fmt::format("length ratio must be > 0, got {}", ratio));
  }
  if (!rec.L) {
    rec.L = ratio * rec.B;
    rec.flags.set(RecordFlag::L_imputed);
  }
  return rec;
}

PierScourRecord default_spacing(PierScourRecord rec, double spacing) {
  if (!rec.S) {
    rec.S = spacing;
    rec.flags.set(RecordFlag::S_defaulted);
  }
  return rec;
}

PierScourRecord impute_critical_velocity(PierScourRecord rec) {
  if (!rec.Vc && rec.y1 > 0.0) {
    rec.Vc = critical_velocity(rec.y1, rec.D50);
    rec.flags.set(RecordFlag::Vc_imputed);
  }
  return rec;
}

std::vector<CompanionRow> load_companion(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  std::string line;
  std::optional<std::vector<std::string>> header;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    header = csv::split(line);
    break;
  }
  if (!header) throw SchemaError(fmt::format("{}: missing column header row", path.string()));
  std::optional<std::size_t> id_at, length_at, method_at;
  for (std::size_t i = 0; i < header->size(); ++i) {
    const auto name = trim((*header)[i]);
    if (name == "id") id_at = i;
    if (name == "pier_length_m") length_at = i;
    if (name == "measurement_method") method_at = i;
  }
  if (!id_at) throw SchemaError(fmt::format("{}: missing required column 'id'", path.string()));

  std::vector<CompanionRow> rows;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = csv::split(line);
    if (!cells || cells->size() != header->size()) {
      throw DataError(fmt::format("{}: malformed row {}", path.string(), line_no));
    }
    CompanionRow row;
    row.id = std::string(trim((*cells)[*id_at]));
    if (length_at) {
      const auto text = trim((*cells)[*length_at]);
      if (!text.empty()) {
        row.L = csv::parse_number(text);
        if (!row.L || !(*row.L > 0.0)) {
          throw DataError(fmt::format("{}: bad pier_length_m '{}'", path.string(), text));
        }
      }
    }
    if (method_at) {
      const auto text = trim((*cells)[*method_at]);
      if (!text.empty()) row.measurement_method = std::string(text);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t merge_companion(std::span<PierScourRecord> records,
                            std::span<const CompanionRow> companion) {
  std::map<std::string_view, const CompanionRow*> by_id;
  for (const auto& row : companion) by_id.emplace(row.id, &row);
  std::size_t recovered = 0;
  for (auto& rec : records) {
    const auto it = by_id.find(rec.id);
    if (it == by_id.end()) continue;
    if (!rec.L && it->second->L) {
      rec.L = it->second->L;
      ++recovered;
    }
    if (!rec.measurement_method && it->second->measurement_method) {
      rec.measurement_method = it->second->measurement_method;
    }
  }
  return recovered;
}

Partition filter_invalid(std::vector<PierScourRecord> records) {
  Partition part;
  for (auto& rec : records) {
    bool bad = false;
    if (rec.y1 == 0.0) {
      rec.flags.set(RecordFlag::excluded_zero_y1);
      bad = true;
    }
    if (rec.V1 == 0.0) {
      rec.flags.set(RecordFlag::excluded_zero_V1);
      bad = true;
    }
    (bad ? part.excluded : part.kept).push_back(std::move(rec));
  }
  return part;
}

std::optional<double> measured_value(const PierScourRecord& rec, Parameter p) {
  switch (p) {
    case Parameter::B:
      return rec.B;
    case Parameter::L:
      if (rec.flags.has(RecordFlag::L_imputed)) return std::nullopt;
      return rec.L;
    case Parameter::y1:
      return rec.y1;
    case Parameter::V1:
      return rec.V1;
    case Parameter::Vc:
      if (rec.flags.has(RecordFlag::Vc_imputed)) return std::nullopt;
      return rec.Vc;
    case Parameter::theta:
      return rec.theta;
    case Parameter::D50:
      return rec.D50;
    case Parameter::S:
      if (rec.flags.has(RecordFlag::S_defaulted)) return std::nullopt;
      return rec.S;
    case Parameter::Sh:
      if (rec.shape) {
        if (const auto* f = std::get_if<ShapeFactor>(&*rec.shape)) return f->value;
      }
      return std::nullopt;
  }
  return std::nullopt;
}

SummaryRow summarize(std::span<const PierScourRecord> records, Parameter parameter,
                     SdConvention convention) {
  switch (parameter) {
    case Parameter::Sh:
    case Parameter::S:
      throw ConfigError(fmt::format("{} is not a summary parameter", parameter_name(parameter)));
    default:
      break;
  }
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& rec : records) {
    const auto v = measured_value(rec, parameter);
    if (!v) continue;
    if ((parameter == Parameter::y1 || parameter == Parameter::V1) && *v == 0.0) continue;
    values.push_back(*v);
  }
  if (values.empty()) {
    throw DataError(fmt::format("empty parameter: no usable values of {}", parameter_name(parameter)));
  }
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double mean = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    mean += (values[i] - mean) / static_cast<double>(i + 1);
  }
  double ss = 0.0;
  for (const double v : values) ss += (v - mean) * (v - mean);
  const std::size_t n = values.size();
  const double denom = convention == SdConvention::sample && n > 1 ? static_cast<double>(n - 1)
                                                                   : static_cast<double>(n);
  return SummaryRow{parameter,
                    *lo,
                    *hi,
                    std::clamp(mean, *lo, *hi),
                    std::sqrt(ss / denom),
                    n,
                    records.size() - n};
}

ScourInputs to_inputs(const PierScourRecord& rec) {
  ScourInputs in;
  in.B = rec.B;
  in.L = rec.L;
  in.y1 = rec.y1;
  in.V1 = rec.V1;
  in.Vc = rec.Vc;
  in.theta = rec.theta.value_or(0.0);
  in.D50 = rec.D50;
  in.shape = rec.shape.value_or(ShapeTag::cylindrical);
  in.S = rec.S;
  return in;
}

std::vector<PierScourRecord> prepare(std::vector<PierScourRecord> records, double length_ratio) {
  for (auto& rec : records) {
    rec = impute_critical_velocity(default_spacing(impute_length(std::move(rec), length_ratio)));
  }
  return records;
}

}  // namespace scourbench
