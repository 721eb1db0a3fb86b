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

#include "scourbench/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "csv.hpp"
#include "scourbench/equations.hpp"
#include "scourbench/errors.hpp"

namespace scourbench {
namespace {

constexpr double kFactor15 = 1.5;
constexpr double kLe2mLimit = 2.0;  // m

struct Evaluated {
  const PierScourRecord* record;
  double predicted;
};

// Evaluates the subset, collecting skips.
std::vector<Evaluated> evaluate_subset(std::span<const PierScourRecord> records, EquationId eq,
                                       Subset subset, const FactorSet* factors,
                                       std::size_t& n_records,
                                       std::vector<SkipDiagnostic>& skipped) {
  const FactorSet& tables = factors ? *factors : FactorSet::builtin();
  std::vector<Evaluated> out;
  n_records = 0;
  for (const auto& rec : records) {
    if (!in_subset(rec, subset)) continue;
    ++n_records;
    if (!(rec.ys_measured > 0.0)) {
      skipped.push_back({rec.id, "measured scour depth is zero; bound ratios are undefined"});
      continue;
    }
    try {
      out.push_back({&rec, predict(eq, to_inputs(rec), tables)});
    } catch (const Error& e) {
      skipped.push_back({rec.id, e.what()});
    }
  }
  return out;
}

std::string percent_text(const AccuracyReport& r, std::size_t count) {
  return csv::format_number(r.percent(count));
}

}  // namespace

BoundsSpec BoundsSpec::factor(double f) {
  if (!(f >= 1.0) || !std::isfinite(f)) {
    throw ConfigError(fmt::format("bound factor must be >= 1, got {}", f));
  }
  return BoundsSpec(Kind::factor, f);
}

double BoundsSpec::lower(double measured) const noexcept {
  return kind_ == Kind::pm50 ? 0.5 * measured : measured / f_;
}

double BoundsSpec::upper(double measured) const noexcept {
  return kind_ == Kind::pm50 ? 1.5 * measured : f_ * measured;
}

bool within_bounds(double measured, double predicted, const BoundsSpec& spec) {
  if (!(measured > 0.0)) {
    throw DomainError(fmt::format("bounds need a measured depth > 0, got {}", measured));
  }
  return spec.lower(measured) <= predicted && predicted <= spec.upper(measured);
}

bool within_bounds_tolerant(double measured, double predicted, const BoundsSpec& spec,
                            double tolerance) {
  if (!(measured > 0.0)) {
    throw DomainError(fmt::format("bounds need a measured depth > 0, got {}", measured));
  }
  return spec.lower((1.0 - tolerance) * measured) <= predicted &&
         predicted <= spec.upper((1.0 + tolerance) * measured);
}

Direction classify(double measured, double predicted) noexcept {
  return predicted >= measured ? Direction::over : Direction::under;
}

std::string_view subset_name(Subset s) noexcept {
  switch (s) {
    case Subset::all: return "all";
    case Subset::le2m: return "le2m";
    case Subset::lab: return "lab";
    case Subset::field: return "field";
  }
  return "?";
}

std::optional<Subset> parse_subset(std::string_view text) noexcept {
  for (const auto s : {Subset::all, Subset::le2m, Subset::lab, Subset::field}) {
    if (subset_name(s) == text) return s;
  }
  return std::nullopt;
}

bool in_subset(const PierScourRecord& rec, Subset s) noexcept {
  switch (s) {
    case Subset::all: return true;
    case Subset::le2m: return rec.ys_measured <= kLe2mLimit;
    case Subset::lab: return rec.kind == DataSource::lab;
    case Subset::field: return rec.kind == DataSource::field;
  }
  return false;
}

double AccuracyReport::percent(std::size_t count) const noexcept {
  if (n_evaluated == 0) return 0.0;
  return 100.0 * static_cast<double>(count) / static_cast<double>(n_evaluated);
}

AccuracyReport accuracy_report(std::span<const PierScourRecord> records, EquationId eq,
                               Subset subset, const AccuracyOptions& options) {
  AccuracyReport r;
  r.equation = eq;
  r.subset = subset;
  const auto evaluated =
      evaluate_subset(records, eq, subset, options.factors, r.n_records, r.skipped);
  const auto pm50 = BoundsSpec::pm50();
  const auto f15 = BoundsSpec::factor(kFactor15);
  if (options.tolerance_column) {
    r.n_within_pm50_tolerant = 0;
    r.n_within_factor15_tolerant = 0;
  }
  double sq = 0.0;
  double diff = 0.0;
  for (const auto& e : evaluated) {
    const double m = e.record->ys_measured;
    const double p = e.predicted;
    ++r.n_evaluated;
    (classify(m, p) == Direction::over ? r.n_over : r.n_under)++;
    if (within_bounds(m, p, pm50)) ++r.n_within_pm50;
    if (within_bounds(m, p, f15)) ++r.n_within_factor15;
    if (options.tolerance_column) {
      if (within_bounds_tolerant(m, p, pm50, options.tolerance)) ++*r.n_within_pm50_tolerant;
      if (within_bounds_tolerant(m, p, f15, options.tolerance)) ++*r.n_within_factor15_tolerant;
    }
    sq += (p - m) * (p - m);
    diff += p - m;
  }
  if (r.n_evaluated > 0) {
    const auto n = static_cast<double>(r.n_evaluated);
    r.rmse = std::sqrt(sq / n);
    r.bias = diff / n;
  }
  return r;
}

std::vector<ScatterRow> scatter_export(std::span<const PierScourRecord> records, EquationId eq,
                                       Subset subset, const FactorSet* factors) {
  std::size_t n_records = 0;
  std::vector<SkipDiagnostic> skipped;
  const auto evaluated = evaluate_subset(records, eq, subset, factors, n_records, skipped);
  const auto pm50 = BoundsSpec::pm50();
  const auto f15 = BoundsSpec::factor(kFactor15);
  std::vector<ScatterRow> rows;
  rows.reserve(evaluated.size());
  for (const auto& e : evaluated) {
    const double m = e.record->ys_measured;
    rows.push_back({e.record->id, e.record->kind, m, e.predicted, classify(m, e.predicted),
                    within_bounds(m, e.predicted, pm50), within_bounds(m, e.predicted, f15),
                    e.record->flags});
  }
  return rows;
}

void write_scatter_csv(std::ostream& out, std::span<const ScatterRow> rows) {
  out << "id,kind,measured_m,predicted_m,direction,within_pm50,within_factor15,flags\n";
  for (const auto& r : rows) {
    out << csv::quote(r.id) << ',' << source_name(r.kind) << ','
        << csv::format_number(r.measured) << ',' << csv::format_number(r.predicted) << ','
        << (r.direction == Direction::over ? "over" : "under") << ','
        << (r.within_pm50 ? "true" : "false") << ',' << (r.within_factor15 ? "true" : "false")
        << ',' << r.flags.to_string() << '\n';
  }
}

void write_scatter_svg(std::ostream& out, std::span<const ScatterRow> rows,
                       std::string_view title) {
  constexpr double kSize = 480.0;
  constexpr double kMargin = 48.0;
  double top = 1.0;
  for (const auto& r : rows) top = std::max({top, r.measured, r.predicted});
  top *= 1.05;
  const double span = kSize - 2 * kMargin;
  auto sx = [&](double v) { return kMargin + span * v / top; };
  auto sy = [&](double v) { return kSize - kMargin - span * v / top; };
  auto line = [&](double slope, std::string_view style) {
    const double x_end = std::min(top, top / slope);
    out << fmt::format(
        "<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" {}/>\n", sx(0), sy(0),
        sx(x_end), sy(slope * x_end), style);
  };
  std::string escaped;
  for (const char c : title) {
    if (c == '<') escaped += "&lt;";
    else if (c == '>') escaped += "&gt;";
    else if (c == '&') escaped += "&amp;";
    else escaped += c;
  }
  out << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
      "viewBox=\"0 0 {0} {0}\">\n",
      kSize);
  out << fmt::format("<title>{}</title>\n", escaped);
  out << fmt::format(
      "<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" stroke=\"black\"/>\n",
      kMargin, span);
  line(1.0, "stroke=\"black\"");
  line(1.5, "stroke=\"red\" stroke-dasharray=\"6 3\"");
  line(0.5, "stroke=\"red\" stroke-dasharray=\"6 3\"");
  line(1.0 / 1.5, "stroke=\"blue\" stroke-dasharray=\"2 2\"");
  for (const auto& r : rows) {
    out << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2\" fill=\"{}\"/>\n",
                       sx(r.measured), sy(r.predicted), r.within_pm50 ? "black" : "gray");
  }
  out << fmt::format(
      "<text x=\"{:.0f}\" y=\"{:.0f}\" text-anchor=\"middle\">measured ys (m)</text>\n",
      kSize / 2, kSize - 12);
  out << fmt::format(
      "<text x=\"14\" y=\"{:.0f}\" transform=\"rotate(-90 14 {:.0f})\" "
      "text-anchor=\"middle\">predicted ys (m)</text>\n",
      kSize / 2, kSize / 2);
  out << "</svg>\n";
}

void write_accuracy_csv(std::ostream& out, std::span<const AccuracyReport> reports) {
  const bool tolerant = std::any_of(reports.begin(), reports.end(), [](const auto& r) {
    return r.n_within_pm50_tolerant.has_value();
  });
  out << "equation,subset,n,n_under,pct_under,n_over,pct_over,n_within_pm50,pct_within_pm50,"
         "n_within_factor15,pct_within_factor15,n_skipped,rmse_m,bias_m";
  if (tolerant) {
    out << ",n_within_pm50_tol,pct_within_pm50_tol,n_within_factor15_tol,"
           "pct_within_factor15_tol";
  }
  out << '\n';
  for (const auto& r : reports) {
    out << csv::quote(display_name(r.equation)) << ',' << subset_name(r.subset) << ','
        << r.n_evaluated << ',' << r.n_under << ',' << percent_text(r, r.n_under) << ','
        << r.n_over << ',' << percent_text(r, r.n_over) << ',' << r.n_within_pm50 << ','
        << percent_text(r, r.n_within_pm50) << ',' << r.n_within_factor15 << ','
        << percent_text(r, r.n_within_factor15) << ',' << r.skipped.size() << ','
        << csv::format_number(r.rmse) << ',' << csv::format_number(r.bias);
    if (tolerant) {
      const auto a = r.n_within_pm50_tolerant.value_or(0);
      const auto b = r.n_within_factor15_tolerant.value_or(0);
      out << ',' << a << ',' << percent_text(r, a) << ',' << b << ',' << percent_text(r, b);
    }
    out << '\n';
  }
}

void write_accuracy_json(std::ostream& out, std::span<const AccuracyReport> reports) {
  using nlohmann::ordered_json;
  auto share = [](const AccuracyReport& r, std::size_t n) {
    return ordered_json{{"n", n}, {"pct", r.percent(n)}};
  };
  ordered_json all = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["equation"] = display_name(r.equation);
    j["subset"] = subset_name(r.subset);
    j["n_records"] = r.n_records;
    j["n_evaluated"] = r.n_evaluated;
    j["under"] = share(r, r.n_under);
    j["over"] = share(r, r.n_over);
    j["within_pm50"] = share(r, r.n_within_pm50);
    j["within_factor15"] = share(r, r.n_within_factor15);
    if (r.n_within_pm50_tolerant) {
      j["within_pm50_tolerant"] = share(r, *r.n_within_pm50_tolerant);
      j["within_factor15_tolerant"] = share(r, *r.n_within_factor15_tolerant);
    }
    j["tie_rule"] = "predicted == measured counts as over";
    j["rmse_m"] = r.rmse;
    j["bias_m"] = r.bias;
    j["skipped"] = ordered_json::array();
    for (const auto& s : r.skipped) j["skipped"].push_back({{"id", s.id}, {"reason", s.reason}});
    all.push_back(std::move(j));
  }
  out << all.dump(2) << '\n';
}

}  // namespace scourbench
