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

#ifndef SCOURBENCH_ACCURACY_HPP_
#define SCOURBENCH_ACCURACY_HPP_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scourbench/dataset.hpp"
#include "scourbench/equation_id.hpp"
#include "scourbench/factors.hpp"

namespace scourbench {

// Acceptance band around a measured depth m for a predicted depth p:
// pm50 is 0.5 m <= p <= 1.5 m, factor(f) is m / f <= p <= f m.
class BoundsSpec {
 public:
  enum class Kind { pm50, factor };

  static BoundsSpec pm50() noexcept { return BoundsSpec(Kind::pm50, 1.5); }
  // Throws ConfigError unless f >= 1.
  static BoundsSpec factor(double f);

  Kind kind() const noexcept { return kind_; }
  double f() const noexcept { return f_; }
  double lower(double measured) const noexcept;
  double upper(double measured) const noexcept;

 private:
  BoundsSpec(Kind kind, double f) : kind_(kind), f_(f) {}
  Kind kind_;
  double f_;
};

// Inclusive membership. Throws DomainError for measured <= 0.
bool within_bounds(double measured, double predicted, const BoundsSpec& spec);

// Same band with the measured value allowed to move by +/- `tolerance`
// (fraction): true when some m' in [(1 - t) m, (1 + t) m] accepts p.
bool within_bounds_tolerant(double measured, double predicted, const BoundsSpec& spec,
                            double tolerance);

enum class Direction { over, under };

// Exact ties count as over.
Direction classify(double measured, double predicted) noexcept;

enum class Subset { all, le2m, lab, field };
std::string_view subset_name(Subset s) noexcept;
std::optional<Subset> parse_subset(std::string_view text) noexcept;
bool in_subset(const PierScourRecord& rec, Subset s) noexcept;

struct SkipDiagnostic {
  std::string id;
  std::string reason;
};

struct AccuracyOptions {
  bool tolerance_column = false;  // adds the +/- 10% measured-value counts
  double tolerance = 0.10;
  const FactorSet* factors = nullptr;  // builtin tables when null
};

struct AccuracyReport {
  EquationId equation;
  Subset subset;
  std::size_t n_records = 0;  // records in the subset
  std::size_t n_evaluated = 0;
  std::size_t n_over = 0;
  std::size_t n_under = 0;
  std::size_t n_within_pm50 = 0;
  std::size_t n_within_factor15 = 0;
  std::optional<std::size_t> n_within_pm50_tolerant;
  std::optional<std::size_t> n_within_factor15_tolerant;
  double rmse = 0.0;  // supplementary
  double bias = 0.0;  // mean(predicted - measured), supplementary
  std::vector<SkipDiagnostic> skipped;

  // count / n_evaluated * 100; 0 when nothing was evaluated.
  double percent(std::size_t count) const noexcept;
};

// Scores an equation on the records of a subset. Records the equation
// cannot evaluate, or with a zero measured depth, are skipped with a reason.
AccuracyReport accuracy_report(std::span<const PierScourRecord> records, EquationId eq,
                               Subset subset, const AccuracyOptions& options = {});

struct ScatterRow {
  std::string id;
  DataSource kind;
  double measured;
  double predicted;
  Direction direction;
  bool within_pm50;
  bool within_factor15;
  RecordFlags flags;
};

// One row per record the equation evaluates (same rules as accuracy_report).
std::vector<ScatterRow> scatter_export(std::span<const PierScourRecord> records, EquationId eq,
                                       Subset subset = Subset::all,
                                       const FactorSet* factors = nullptr);

void write_scatter_csv(std::ostream& out, std::span<const ScatterRow> rows);
// Minimal static SVG: points, the equality line and both bound pairs.
void write_scatter_svg(std::ostream& out, std::span<const ScatterRow> rows,
                       std::string_view title);

// Table-style report: one row per (equation, subset).
void write_accuracy_csv(std::ostream& out, std::span<const AccuracyReport> reports);
void write_accuracy_json(std::ostream& out, std::span<const AccuracyReport> reports);

}  // namespace scourbench

#endif  // SCOURBENCH_ACCURACY_HPP_
