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

#include "scourbench/oat.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "csv.hpp"
#include "scourbench/errors.hpp"
#include "scourbench/reference.hpp"

namespace scourbench {
namespace {

constexpr double kBaselineSpacing = 3.0;

void set_coordinate(ScourInputs& in, Parameter p, double value) {
  switch (p) {
    case Parameter::B:
      in.B = value;
      return;
    case Parameter::L:
      in.L = value;
      return;
    case Parameter::y1:
      in.y1 = value;
      return;
    case Parameter::V1:
      in.V1 = value;
      return;
    case Parameter::Vc:
      in.Vc = value;
      return;
    case Parameter::theta:
      in.theta = value;
      return;
    case Parameter::D50:
      in.D50 = value;
      return;
    case Parameter::Sh:
      in.shape = ShapeFactor{value};
      return;
    case Parameter::S:
      in.S = value;
      return;
  }
}

}  // namespace

OatPlan make_oat_plan(DataSource source, const OatOptions& options) {
  if (!(options.length_ratio > 0.0)) {
    throw ConfigError(fmt::format("length ratio must be > 0, got {}", options.length_ratio));
  }
  OatPlan plan;
  plan.source = source;
  plan.baseline.shape = ShapeTag::cylindrical;
  plan.baseline.S = kBaselineSpacing;
  plan.baseline.theta = 0.0;

  for (const auto& row : published_rows(source)) {
    if (!row.stats) continue;
    const auto& s = *row.stats;
    set_coordinate(plan.baseline, row.parameter, s.mean);
    if (source == DataSource::lab &&
        (row.parameter == Parameter::theta || row.parameter == Parameter::Sh)) {
      continue;
    }
    PerturbationSet set{row.parameter, {s.min, s.max, s.mean - s.sd, s.mean + s.sd}, false};
    for (const auto e : {Experiment::mu_minus_sigma, Experiment::mu_plus_sigma}) {
      double& v = set.values[static_cast<std::size_t>(e)];
      const double c = std::clamp(v, s.min, s.max);
      if (c != v) {
        v = c;
        set.clamped = true;
      }
    }
    plan.perturbations.push_back(set);
  }
  if (options.zero_theta_baseline) plan.baseline.theta = 0.0;
  if (!plan.baseline.L) plan.baseline.L = options.length_ratio * plan.baseline.B;
  if (!plan.baseline.Vc) {
    plan.derive_critical_velocity = true;
    plan.baseline.Vc = critical_velocity(plan.baseline.y1, plan.baseline.D50);
  }
  return plan;
}

ScourInputs perturbed_inputs(const OatPlan& plan, Parameter p, double value) {
  ScourInputs in = plan.baseline;
  set_coordinate(in, p, value);
  if (plan.derive_critical_velocity && p != Parameter::Vc && in.y1 > 0.0) {
    in.Vc = critical_velocity(in.y1, in.D50);
  }
  return in;
}

double spread(const ScourModel& model, const OatPlan& plan, Parameter p, double value,
              std::string_view model_name) {
  const double base = model(plan.baseline);
  if (base == 0.0) {
    throw DegenerateBaselineError(
        fmt::format("degenerate baseline: {} predicts zero scour at the baseline", model_name));
  }
  return 100.0 * (model(perturbed_inputs(plan, p, value)) / base);
}

double spread(EquationId eq, const OatPlan& plan, Parameter p, double value) {
  return spread([eq](const ScourInputs& in) { return predict(eq, in); }, plan, p, value,
                display_name(eq));
}

double spread_delta(std::span<const double, 4> t) {
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  return *hi - *lo;
}

OatResult run_oat(EquationId eq, const OatPlan& plan) {
  OatResult result{eq, plan.source, predict(eq, plan.baseline), {}};
  if (result.baseline_ys == 0.0) {
    throw DegenerateBaselineError(fmt::format(
        "degenerate baseline: {} predicts zero scour at the baseline", display_name(eq)));
  }
  for (const auto& set : plan.perturbations) {
    OatEntry entry{set.parameter, {}, 0.0, 0, set.clamped};
    for (std::size_t k = 0; k < 4; ++k) {
      entry.t[k] =
          100.0 * (predict(eq, perturbed_inputs(plan, set.parameter, set.values[k])) /
                   result.baseline_ys);
    }
    entry.t_delta = spread_delta(entry.t);
    result.entries.push_back(entry);
  }
  std::vector<std::size_t> order(result.entries.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return result.entries[a].t_delta > result.entries[b].t_delta;
  });
  for (std::size_t r = 0; r < order.size(); ++r) {
    result.entries[order[r]].rank = static_cast<int>(r + 1);
  }
  return result;
}

OatResult run_oat(EquationId eq, DataSource source, const OatOptions& options) {
  return run_oat(eq, make_oat_plan(source, options));
}

void write_oat_csv(std::ostream& out, std::span<const OatResult> results) {
  out << "equation,parameter,t_min,t_max,t_mu_minus_sigma,t_mu_plus_sigma,t_delta,rank,source,"
         "clamped\n";
  for (const auto& r : results) {
    for (const auto& e : r.entries) {
      out << csv::quote(display_name(r.equation)) << ',' << parameter_name(e.parameter);
      for (const double t : e.t) out << ',' << csv::format_number(t);
      out << ',' << csv::format_number(e.t_delta) << ',' << e.rank << ','
          << source_name(r.source) << ',' << (e.clamped ? "true" : "false") << '\n';
    }
  }
}

}  // namespace scourbench
