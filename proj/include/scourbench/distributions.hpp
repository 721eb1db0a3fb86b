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

#ifndef SCOURBENCH_DISTRIBUTIONS_HPP_
#define SCOURBENCH_DISTRIBUTIONS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "scourbench/rng.hpp"

namespace scourbench {

enum class Family { GEV, Gamma, LogNormal, Uniform };

inline constexpr Family kAllFamilies[] = {Family::GEV, Family::Gamma, Family::LogNormal,
                                          Family::Uniform};

// "GEV", "Gam", "LogNorm", "Uni".
std::string_view family_name(Family f) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;
int parameter_count(Family f) noexcept;

// Generalised extreme value with the heavy-tail-positive shape convention:
//   F(x) = exp(-(1 + k (x - location) / scale)^(-1/k)),
// so k > 0 is Frechet-type (bounded below) and k < 0 Weibull-type. |k| below
// kGumbelThreshold uses the Gumbel limit.
struct Gev {
  double shape;
  double scale;
  double location;
};
struct GammaDist {
  double shape;
  double scale;
};
// Parameters of the underlying normal of log(x).
struct LogNormal {
  double mu;
  double sigma;
};
struct Uniform {
  double lo;
  double hi;
};

inline constexpr double kGumbelThreshold = 1e-8;

class Distribution {
 public:
  using Params = std::variant<Gev, GammaDist, LogNormal, Uniform>;

  // Throws DomainError for non-positive scales or an empty interval.
  explicit Distribution(Params params);

  Family family() const noexcept { return static_cast<Family>(params_.index()); }
  const Params& params() const noexcept { return params_; }

  // GEV [shape, scale, location]; Gamma [shape, scale]; LogNormal [mu, sigma];
  // Uniform [lo, hi].
  std::vector<double> parameters() const;
  static std::vector<std::string_view> parameter_names(Family f);
  static Distribution from_parameters(Family f, std::span<const double> values);

  // Closed support interval (may be infinite at either end).
  std::pair<double, double> support() const noexcept;

  double pdf(double x) const;
  double log_pdf(double x) const;
  double cdf(double x) const;
  // p must lie in (0, 1); throws DomainError otherwise.
  double quantile(double p) const;
  double sample(RandomStream& rng) const { return quantile(rng.uniform_open()); }

  // Infinite when the moment does not exist.
  double mean() const;
  double stddev() const;

  std::string describe() const;

 private:
  Params params_;
};

inline double pdf(const Distribution& d, double x) { return d.pdf(x); }
inline double cdf(const Distribution& d, double x) { return d.cdf(x); }
inline double quantile(const Distribution& d, double p) { return d.quantile(p); }
inline double sample(const Distribution& d, RandomStream& rng) { return d.sample(rng); }

struct FitResult {
  Distribution distribution;
  double loglik;
  int k_params;
  double aic;
};

struct FitOptions {
  int restarts = 5;
  double tolerance = 1e-8;  // on the log-likelihood
  int max_iterations = 20000;
  std::uint64_t seed = 0x5C0u;  // restart perturbations
};

// Maximum-likelihood fit. Uniform is fitted analytically to [min, max] and
// LogNormal through its closed-form estimator; GEV and Gamma use a simplex
// search with restarts. Throws DomainError for data outside the family's
// support or too few points, FitError when no restart converges.
FitResult fit_mle(std::span<const double> data, Family family, const FitOptions& options = {});

double log_likelihood(const Distribution& d, std::span<const double> data);

// 2 k - 2 loglik.
double aic(const FitResult& fit);
double aic(int k_params, double loglik);

struct CandidateFit {
  Family family;
  std::optional<FitResult> fit;
  std::string error;  // set when the fit failed
};

// Fits every family; failures are kept as diagnostics.
std::vector<CandidateFit> fit_candidates(std::span<const double> data,
                                         std::span<const Family> families,
                                         const FitOptions& options = {});

// Index of the best candidate: minimum AIC, ties to fewer parameters, then
// to the earlier family. Throws FitError if every candidate failed.
std::size_t best_candidate(std::span<const CandidateFit> candidates);

FitResult select_best(std::span<const double> data, std::span<const Family> families,
                      const FitOptions& options = {});

}  // namespace scourbench

#endif  // SCOURBENCH_DISTRIBUTIONS_HPP_
