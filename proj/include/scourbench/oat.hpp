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

#ifndef SCOURBENCH_OAT_HPP_
#define SCOURBENCH_OAT_HPP_

#include <array>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "scourbench/equations.hpp"
#include "scourbench/parameters.hpp"

namespace scourbench {

// The four one-at-a-time experiments, in this order.
enum class Experiment { min, max, mu_minus_sigma, mu_plus_sigma };
inline constexpr std::array<Experiment, 4> kExperiments = {
    Experiment::min, Experiment::max, Experiment::mu_minus_sigma, Experiment::mu_plus_sigma};

struct PerturbationSet {
  Parameter parameter;
  std::array<double, 4> values;  // indexed by Experiment
  bool clamped = false;          // mu -/+ sigma was pulled back into [min, max]
};

struct OatPlan {
  DataSource source = DataSource::field;
  ScourInputs baseline;
  std::vector<PerturbationSet> perturbations;
  // Vc is recomputed from y1 and D50 for every experiment when the source
  // publishes no Vc range (field data).
  bool derive_critical_velocity = false;
};

struct OatOptions {
  double length_ratio = 11.7;       // lab L = ratio * B
  bool zero_theta_baseline = false;  // baseline theta = 0 instead of its mean
};

// Baseline at the published means (cylindrical pier, S = 3 m) and the
// published min, max and mean -/+ sd for every parameter that has them.
// Lab plans hold theta and shape fixed.
OatPlan make_oat_plan(DataSource source, const OatOptions& options = {});

// Baseline with one coordinate replaced.
ScourInputs perturbed_inputs(const OatPlan& plan, Parameter p, double value);

using ScourModel = std::function<double(const ScourInputs&)>;

// t = 100 f(x_i) / f(x_b). Throws DegenerateBaselineError when f(x_b) = 0.
double spread(const ScourModel& model, const OatPlan& plan, Parameter p, double value,
              std::string_view model_name = "model");
double spread(EquationId eq, const OatPlan& plan, Parameter p, double value);

// max t - min t.
double spread_delta(std::span<const double, 4> t);

struct OatEntry {
  Parameter parameter;
  std::array<double, 4> t;  // indexed by Experiment
  double t_delta;
  int rank;  // 1 = most influential; ties keep plan order
  bool clamped;
};

struct OatResult {
  EquationId equation;
  DataSource source;
  double baseline_ys;
  std::vector<OatEntry> entries;  // plan order
};

OatResult run_oat(EquationId eq, const OatPlan& plan);
OatResult run_oat(EquationId eq, DataSource source, const OatOptions& options = {});

void write_oat_csv(std::ostream& out, std::span<const OatResult> results);

}  // namespace scourbench

#endif  // SCOURBENCH_OAT_HPP_
