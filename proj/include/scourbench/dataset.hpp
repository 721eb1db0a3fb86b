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

#ifndef SCOURBENCH_DATASET_HPP_
#define SCOURBENCH_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scourbench/equations.hpp"
#include "scourbench/parameters.hpp"

namespace scourbench {

enum class RecordFlag : std::uint8_t {
  L_imputed = 1u << 0,
  S_defaulted = 1u << 1,
  Vc_imputed = 1u << 2,
  excluded_zero_y1 = 1u << 3,
  excluded_zero_V1 = 1u << 4,
};

class RecordFlags {
 public:
  bool has(RecordFlag f) const noexcept { return (bits_ & static_cast<std::uint8_t>(f)) != 0; }
  void set(RecordFlag f) noexcept { bits_ |= static_cast<std::uint8_t>(f); }
  bool empty() const noexcept { return bits_ == 0; }
  std::uint8_t bits() const noexcept { return bits_; }

  // "L_imputed|S_defaulted"; empty string for no flags.
  std::string to_string() const;
  static std::optional<RecordFlags> parse(std::string_view text);

  friend bool operator==(RecordFlags, RecordFlags) = default;

 private:
  std::uint8_t bits_ = 0;
};

// One measured local pier-scour observation.
struct PierScourRecord {
  std::string id;
  DataSource kind = DataSource::field;
  double ys_measured = 0.0;  // m
  double B = 0.0;            // m
  std::optional<double> L;   // m
  double y1 = 0.0;           // m
  double V1 = 0.0;           // m/s
  std::optional<double> Vc;  // m/s
  std::optional<double> theta;  // degrees
  double D50 = 0.0;             // mm
  std::optional<PierShape> shape;
  std::optional<double> S;  // m
  std::optional<std::string> measurement_method;
  RecordFlags flags;
};

inline constexpr std::string_view kSchemaHeader = "# scourbench-schema v1";
inline constexpr double kDefaultLengthRatio = 11.7;
inline constexpr double kDefaultSpacing = 3.0;  // m

// Column names in file order.
std::span<const std::string_view> csv_columns();

struct RowError {
  std::size_t line;  // 1-based line number in the file
  std::string message;
};

struct LoadResult {
  std::vector<PierScourRecord> records;
  std::vector<RowError> errors;
};

// Parses a CSV export (see README for the schema). Structural problems
// (missing header line, missing or unknown column) throw SchemaError;
// malformed rows are collected in LoadResult::errors. Lab rows get
// theta = 0 and a cylindrical shape.
LoadResult load_records(const std::filesystem::path& path, DataSource kind);
LoadResult parse_records(std::istream& in, DataSource kind, std::string_view origin = "<stream>");

// Canonical CSV: the input schema plus a trailing `flags` column, numbers
// in shortest round-trip form.
void write_records(std::ostream& out, std::span<const PierScourRecord> records);

PierScourRecord impute_length(PierScourRecord rec, double ratio = kDefaultLengthRatio);
PierScourRecord default_spacing(PierScourRecord rec, double spacing = kDefaultSpacing);
// Vc from the HEC-18 critical-velocity relation when absent.
PierScourRecord impute_critical_velocity(PierScourRecord rec);

struct CompanionRow {
  std::string id;
  std::optional<double> L;
  std::optional<std::string> measurement_method;
};

// Per-pier table (id, pier_length_m, measurement_method) holding lengths and
// measurement techniques missing from the main export.
std::vector<CompanionRow> load_companion(const std::filesystem::path& path);

// Fills absent L / method from the companion by id. Returns the number of
// lengths recovered.
std::size_t merge_companion(std::span<PierScourRecord> records,
                            std::span<const CompanionRow> companion);

struct Partition {
  std::vector<PierScourRecord> kept;
  std::vector<PierScourRecord> excluded;
};

// Moves records with y1 = 0 or V1 = 0 to `excluded` (flagging the reason),
// preserving order in both halves.
Partition filter_invalid(std::vector<PierScourRecord> records);

enum class SdConvention { sample, population };

struct SummaryRow {
  Parameter parameter;
  double min;
  double max;
  double mean;
  double sd;
  std::size_t count_used;
  std::size_t count_excluded;  // absent, imputed, or a zero y1 / V1
};

// Summary statistics of one of B, L, y1, V1, Vc, theta, D50 over the
// records that carry a measured value. Imputed values are never summarised;
// zero y1 and V1 are excluded. Throws DataError when nothing is left.
SummaryRow summarize(std::span<const PierScourRecord> records, Parameter parameter,
                     SdConvention convention = SdConvention::sample);

std::optional<double> measured_value(const PierScourRecord& rec, Parameter p);

// Equation inputs for a processed record.
ScourInputs to_inputs(const PierScourRecord& rec);

// Applies the default processing chain: companion merge (if any), length
// imputation, default spacing and Vc imputation.
std::vector<PierScourRecord> prepare(std::vector<PierScourRecord> records,
                                     double length_ratio = kDefaultLengthRatio);

}  // namespace scourbench

#endif  // SCOURBENCH_DATASET_HPP_
