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

#ifndef SCOURBENCH_PAWN_HPP_
#define SCOURBENCH_PAWN_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scourbench/dataset.hpp"
#include "scourbench/distributions.hpp"
#include "scourbench/equation_id.hpp"
#include "scourbench/parameters.hpp"

namespace scourbench {

// One sampled input. Sampling is restricted to [lower, upper] by drawing
// probabilities within [F(lower), F(upper)], so the truncated marginal keeps
// the exact stratification.
struct Marginal {
  std::string name;
  std::optional<Parameter> parameter;  // empty for the dummy column
  Distribution distribution;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

// Physical range of a parameter: lengths, velocities and grain size > 0,
// attack angle in [0, 90] degrees. The positive floor is 1e-9 in the
// parameter's unit.
std::pair<double, double> physical_bounds(Parameter p);

// Published marginals for the source, truncated to physical bounds.
std::vector<Marginal> published_marginals(DataSource source);

// Best-AIC marginal per parameter fitted to measured values; Sh and S keep
// the published uniform ranges.
std::vector<Marginal> fitted_marginals(std::span<const PierScourRecord> records,
                                       DataSource source, const FitOptions& options = {});

Marginal dummy_marginal();

struct GsaConfig {
  std::size_t N = 5000;
  std::size_t n_intervals = 10;
  std::size_t bootstrap_resamples = 1000;
  std::uint64_t seed = 0;
  double ci_level = 0.95;
  double dummy_quantile = 0.95;
  unsigned workers = 1;
  bool dummy_column = true;
  double length_ratio = 11.7;  // L = ratio * B when L is not sampled
};

// Throws ConfigError unless n_intervals >= 2, N >= 10 n_intervals,
// resamples >= 1, levels in (0, 1) and workers >= 1.
void validate(const GsaConfig& config);

struct SampleMatrix {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // one per marginal, N values each
  std::vector<double> Y;

  std::size_t rows() const noexcept { return columns.empty() ? Y.size() : columns[0].size(); }
};

// Latin hypercube: column j holds one value in each of the N equiprobable
// strata of marginal j, in an order given by a seeded permutation.
std::vector<std::vector<double>> latin_hypercube(std::span<const Marginal> marginals,
                                                 std::size_t N, std::uint64_t seed);

// Right-continuous empirical CDF.
class EmpiricalCdf {
 public:
  // Throws DomainError on empty input.
  explicit EmpiricalCdf(std::vector<double> values);

  double operator()(double y) const noexcept;
  std::size_t count_le(double y) const noexcept;
  std::span<const double> sorted() const noexcept { return sorted_; }
  std::size_t size() const noexcept { return sorted_.size(); }

 private:
  std::vector<double> sorted_;
};

// Maximum |F - G| over the union of both samples' points.
double ks_statistic(const EmpiricalCdf& F, const EmpiricalCdf& G);
// Maximum |F - G| over the given points.
double ks_statistic(const EmpiricalCdf& F, const EmpiricalCdf& G,
                    std::span<const double> points);

// Equal-count bins: sizes differ by at most one, larger bins first.
std::vector<std::size_t> bin_sizes(std::size_t N, std::size_t n_intervals);

// S_i = mean over conditioning bins of KS(unconditional, conditional).
// Throws SparseBinError when a bin would hold fewer than 5 points.
std::vector<double> pawn_indices(std::span<const std::vector<double>> X,
                                 std::span<const double> Y, std::size_t n_intervals);

struct Interval {
  double lo;
  double hi;
};

struct DummyThreshold {
  double mean;
  double q95;  // upper quantile at GsaConfig::dummy_quantile
};

struct BootstrapResult {
  std::vector<Interval> ci;  // per column
  DummyThreshold dummy;
};

// Row-resampling bootstrap. Each replicate recomputes every index and the
// dummy index (mean KS between the replicate's output CDF and n random
// subsamples of it, each of size floor(N / n)). Replicate r draws from its
// own stream, so results do not depend on the worker count.
BootstrapResult bootstrap(std::span<const std::vector<double>> X, std::span<const double> Y,
                          const GsaConfig& config);
std::vector<Interval> bootstrap_ci(std::span<const std::vector<double>> X,
                                   std::span<const double> Y, const GsaConfig& config);
DummyThreshold dummy_index(std::span<const double> Y, const GsaConfig& config);

struct SensitivityIndex {
  std::string name;
  std::optional<Parameter> parameter;
  double S;
  double ci_lo;
  double ci_hi;
  bool significant;  // ci_lo above the dummy upper quantile
};

struct GsaReport {
  EquationId equation;
  DataSource source;
  GsaConfig config;
  std::vector<SensitivityIndex> indices;  // sampled parameters
  std::optional<SensitivityIndex> dummy_column;
  DummyThreshold dummy;
};

// Inputs sampled for an equation: parameters it reads that have a marginal.
// Throws ConfigError when a required parameter has neither a marginal nor a
// documented substitute (field Vc from y1 and D50, L = ratio B, lab theta = 0
// and circular shape, S = 3 m).
std::vector<Marginal> gsa_marginals(EquationId eq, DataSource source,
                                    std::span<const Marginal> available);

// Builds the equation inputs for one sampled row.
ScourInputs gsa_inputs(DataSource source, std::span<const Marginal> marginals,
                       std::span<const double> row, double length_ratio);

// Samples and evaluates the equation (rows evaluated in parallel).
SampleMatrix sample_equation(EquationId eq, DataSource source,
                             std::span<const Marginal> marginals, const GsaConfig& config);

GsaReport analyse(EquationId eq, DataSource source, const SampleMatrix& sample,
                  std::span<const Marginal> marginals, const GsaConfig& config);

// Sample, evaluate, index, bootstrap, threshold.
GsaReport run_gsa(EquationId eq, DataSource source, const GsaConfig& config,
                  std::span<const Marginal> marginals);
GsaReport run_gsa(EquationId eq, DataSource source, const GsaConfig& config);

void write_gsa_json(std::ostream& out, const GsaReport& report);

// Conditional and unconditional CDF curves:
// parameter,bin,x_lo,x_hi,y,F (bin "all" is the unconditional curve).
void write_conditional_cdfs(std::ostream& out, const SampleMatrix& sample,
                            std::size_t n_intervals);

}  // namespace scourbench

#endif  // SCOURBENCH_PAWN_HPP_
