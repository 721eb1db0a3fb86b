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

#include "scourbench/distributions.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <numeric>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <fmt/format.h>

#include "scourbench/errors.hpp"

namespace scourbench {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr std::size_t kMinimumFitSize = 10;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_probability(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError(fmt::format("quantile: probability must be in (0, 1) (got {})", p));
  }
}

bool is_gumbel(const Gev& g) { return std::abs(g.shape) < kGumbelThreshold; }

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* s) const { gsl_multimin_fminimizer_free(s); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

VectorPtr make_vector(std::span<const double> values) {
  VectorPtr v(gsl_vector_alloc(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) gsl_vector_set(v.get(), i, values[i]);
  return v;
}

// Free search coordinates for the simplex; scales live on a log axis.
Distribution from_search(Family family, const gsl_vector* v) {
  if (family == Family::GEV) {
    return Distribution(Gev{gsl_vector_get(v, 0), std::exp(gsl_vector_get(v, 1)),
                            gsl_vector_get(v, 2)});
  }
  return Distribution(GammaDist{std::exp(gsl_vector_get(v, 0)), std::exp(gsl_vector_get(v, 1))});
}

struct Objective {
  Family family;
  std::span<const double> data;
};

double negative_loglik(const gsl_vector* v, void* params) {
  const auto* objective = static_cast<const Objective*>(params);
  for (std::size_t i = 0; i < v->size; ++i) {
    if (!std::isfinite(gsl_vector_get(v, i)) || std::abs(gsl_vector_get(v, i)) > 700.0) {
      return std::numeric_limits<double>::max();
    }
  }
  const double ll = log_likelihood(from_search(objective->family, v), objective->data);
  return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
}

struct SimplexOutcome {
  std::vector<double> x;
  double value;
  bool converged;
};

SimplexOutcome run_simplex(Objective& objective, std::vector<double> start,
                           std::span<const double> steps, const FitOptions& options) {
  gsl_set_error_handler_off();
  const std::size_t n = start.size();
  gsl_multimin_function fn{&negative_loglik, n, &objective};
  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  double previous = std::numeric_limits<double>::max();
  // Restart the simplex from its own optimum until a full run no longer
  // improves the log-likelihood by more than the tolerance.
  for (int round = 0; round < 20; ++round) {
    auto x = make_vector(start);
    auto step = make_vector(steps);
    if (gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get()) != GSL_SUCCESS) {
      return {start, previous, false};
    }
    for (int it = 0; it < options.max_iterations; ++it) {
      if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), 1e-10) == GSL_SUCCESS) {
        break;
      }
    }
    const double value = gsl_multimin_fminimizer_minimum(s.get());
    for (std::size_t i = 0; i < n; ++i) start[i] = gsl_vector_get(s->x, i);
    if (previous - value < options.tolerance) {
      return {start, std::min(value, previous), value < std::numeric_limits<double>::max()};
    }
    previous = value;
  }
  return {start, previous, false};
}

double sample_mean(std::span<const double> data) {
  return std::accumulate(data.begin(), data.end(), 0.0) / static_cast<double>(data.size());
}

double sample_sd(std::span<const double> data, double mean) {
  double ss = 0.0;
  for (double x : data) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / static_cast<double>(data.size() - 1));
}

FitResult make_fit(Distribution d, std::span<const double> data) {
  const double ll = log_likelihood(d, data);
  const int k = parameter_count(d.family());
  return FitResult{std::move(d), ll, k, aic(k, ll)};
}

FitResult fit_iterative(std::span<const double> data, Family family,
                        const FitOptions& options) {
  const double m = sample_mean(data);
  const double sd = sample_sd(data, m);
  if (!(sd > 0.0)) throw FitError(fmt::format("{}: data have zero spread", family_name(family)), -kInf);

  std::vector<double> start;
  std::vector<double> steps;
  if (family == Family::GEV) {
    const double scale = sd * std::sqrt(6.0) / std::numbers::pi;
    start = {0.1, std::log(scale), m - kEulerGamma * scale};
    steps = {0.1, 0.2, 0.2 * sd};
  } else {
    start = {std::log(m * m / (sd * sd)), std::log(sd * sd / m)};
    steps = {0.3, 0.3};
  }

  Objective objective{family, data};
  RandomStream rng(options.seed, static_cast<std::uint64_t>(family));
  std::optional<SimplexOutcome> best;
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    std::vector<double> x0 = start;
    if (r > 0) {
      for (std::size_t i = 0; i < x0.size(); ++i) {
        x0[i] += (rng.uniform_open() - 0.5) * 4.0 * steps[i];
      }
    }
    auto outcome = run_simplex(objective, x0, steps, options);
    if (outcome.converged && (!best || outcome.value < best->value)) best = std::move(outcome);
  }
  if (!best) {
    throw FitError(fmt::format("{}: simplex search did not converge after {} restarts",
                               family_name(family), options.restarts),
                   -kInf);
  }
  auto vec = make_vector(best->x);
  return make_fit(from_search(family, vec.get()), data);
}

}  // namespace

std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::GEV: return "GEV";
    case Family::Gamma: return "Gam";
    case Family::LogNormal: return "LogNorm";
    case Family::Uniform: return "Uni";
  }
  return "?";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (Family f : kAllFamilies) {
    if (family_name(f) == name) return f;
  }
  if (name == "gev") return Family::GEV;
  if (name == "gamma") return Family::Gamma;
  if (name == "lognormal") return Family::LogNormal;
  if (name == "uniform") return Family::Uniform;
  return std::nullopt;
}

int parameter_count(Family f) noexcept { return f == Family::GEV ? 3 : 2; }

Distribution::Distribution(Params params) : params_(params) {
  std::visit(overloaded{
                 [](const Gev& g) {
                   if (!(g.scale > 0.0) || !std::isfinite(g.shape) || !std::isfinite(g.location))
                     throw DomainError(fmt::format("GEV: scale must be > 0 (got {})", g.scale));
                 },
                 [](const GammaDist& g) {
                   if (!(g.shape > 0.0 && g.scale > 0.0))
                     throw DomainError("Gamma: shape and scale must be > 0");
                 },
                 [](const LogNormal& l) {
                   if (!(l.sigma > 0.0) || !std::isfinite(l.mu))
                     throw DomainError("LogNormal: sigma must be > 0");
                 },
                 [](const Uniform& u) {
                   if (!(u.lo < u.hi)) throw DomainError("Uniform: lo must be < hi");
                 },
             },
             params_);
}

std::vector<double> Distribution::parameters() const {
  return std::visit(overloaded{
                        [](const Gev& g) { return std::vector{g.shape, g.scale, g.location}; },
                        [](const GammaDist& g) { return std::vector{g.shape, g.scale}; },
                        [](const LogNormal& l) { return std::vector{l.mu, l.sigma}; },
                        [](const Uniform& u) { return std::vector{u.lo, u.hi}; },
                    },
                    params_);
}

std::vector<std::string_view> Distribution::parameter_names(Family f) {
  switch (f) {
    case Family::GEV: return {"shape", "scale", "location"};
    case Family::Gamma: return {"shape", "scale"};
    case Family::LogNormal: return {"mu", "sigma"};
    case Family::Uniform: return {"lo", "hi"};
  }
  return {};
}

Distribution Distribution::from_parameters(Family f, std::span<const double> v) {
  if (v.size() != static_cast<std::size_t>(parameter_count(f))) {
    throw DomainError(fmt::format("{} takes {} parameters (got {})", family_name(f),
                                  parameter_count(f), v.size()));
  }
  switch (f) {
    case Family::GEV: return Distribution(Gev{v[0], v[1], v[2]});
    case Family::Gamma: return Distribution(GammaDist{v[0], v[1]});
    case Family::LogNormal: return Distribution(LogNormal{v[0], v[1]});
    case Family::Uniform: return Distribution(Uniform{v[0], v[1]});
  }
  throw DomainError("unknown family");
}

std::pair<double, double> Distribution::support() const noexcept {
  return std::visit(overloaded{
                        [](const Gev& g) -> std::pair<double, double> {
                          if (is_gumbel(g)) return {-kInf, kInf};
                          const double bound = g.location - g.scale / g.shape;
                          return g.shape > 0.0 ? std::pair{bound, kInf} : std::pair{-kInf, bound};
                        },
                        [](const GammaDist&) { return std::pair{0.0, kInf}; },
                        [](const LogNormal&) { return std::pair{0.0, kInf}; },
                        [](const Uniform& u) { return std::pair{u.lo, u.hi}; },
                    },
                    params_);
}

double Distribution::log_pdf(double x) const {
  return std::visit(
      overloaded{
          [x](const Gev& g) {
            const double z = (x - g.location) / g.scale;
            if (is_gumbel(g)) return -std::log(g.scale) - z - std::exp(-z);
            const double t = 1.0 + g.shape * z;
            if (!(t > 0.0)) return -kInf;
            const double lt = std::log(t);
            return -std::log(g.scale) - (1.0 / g.shape + 1.0) * lt - std::exp(-lt / g.shape);
          },
          [x](const GammaDist& g) {
            if (!(x > 0.0)) return -kInf;
            return (g.shape - 1.0) * std::log(x) - x / g.scale - boost::math::lgamma(g.shape) -
                   g.shape * std::log(g.scale);
          },
          [x](const LogNormal& l) {
            if (!(x > 0.0)) return -kInf;
            const double z = (std::log(x) - l.mu) / l.sigma;
            return -0.5 * z * z - std::log(x * l.sigma) - 0.5 * std::log(2.0 * std::numbers::pi);
          },
          [x](const Uniform& u) {
            return (x >= u.lo && x <= u.hi) ? -std::log(u.hi - u.lo) : -kInf;
          },
      },
      params_);
}

double Distribution::pdf(double x) const { return std::exp(log_pdf(x)); }

double Distribution::cdf(double x) const {
  return std::visit(
      overloaded{
          [x](const Gev& g) {
            const double z = (x - g.location) / g.scale;
            if (is_gumbel(g)) return std::exp(-std::exp(-z));
            const double t = 1.0 + g.shape * z;
            if (!(t > 0.0)) return g.shape > 0.0 ? 0.0 : 1.0;
            return std::exp(-std::pow(t, -1.0 / g.shape));
          },
          [x](const GammaDist& g) {
            return x > 0.0 ? boost::math::gamma_p(g.shape, x / g.scale) : 0.0;
          },
          [x](const LogNormal& l) {
            if (!(x > 0.0)) return 0.0;
            return 0.5 * boost::math::erfc(-(std::log(x) - l.mu) / (l.sigma * std::numbers::sqrt2));
          },
          [x](const Uniform& u) {
            if (x <= u.lo) return 0.0;
            if (x >= u.hi) return 1.0;
            return (x - u.lo) / (u.hi - u.lo);
          },
      },
      params_);
}

double Distribution::quantile(double p) const {
  check_probability(p);
  return std::visit(
      overloaded{
          [p](const Gev& g) {
            const double e = -std::log(p);
            if (is_gumbel(g)) return g.location - g.scale * std::log(e);
            return g.location + g.scale * std::expm1(-g.shape * std::log(e)) / g.shape;
          },
          [p](const GammaDist& g) { return g.scale * boost::math::gamma_p_inv(g.shape, p); },
          [p](const LogNormal& l) {
            return std::exp(l.mu - l.sigma * std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p));
          },
          [p](const Uniform& u) { return u.lo + p * (u.hi - u.lo); },
      },
      params_);
}

double Distribution::mean() const {
  return std::visit(overloaded{
                        [](const Gev& g) {
                          if (is_gumbel(g)) return g.location + kEulerGamma * g.scale;
                          if (g.shape >= 1.0) return kInf;
                          return g.location +
                                 g.scale * (boost::math::tgamma(1.0 - g.shape) - 1.0) / g.shape;
                        },
                        [](const GammaDist& g) { return g.shape * g.scale; },
                        [](const LogNormal& l) { return std::exp(l.mu + 0.5 * l.sigma * l.sigma); },
                        [](const Uniform& u) { return 0.5 * (u.lo + u.hi); },
                    },
                    params_);
}

double Distribution::stddev() const {
  return std::visit(
      overloaded{
          [](const Gev& g) {
            if (is_gumbel(g)) return g.scale * std::numbers::pi / std::sqrt(6.0);
            if (g.shape >= 0.5) return kInf;
            const double g1 = boost::math::tgamma(1.0 - g.shape);
            const double g2 = boost::math::tgamma(1.0 - 2.0 * g.shape);
            return g.scale * std::sqrt(g2 - g1 * g1) / std::abs(g.shape);
          },
          [](const GammaDist& g) { return std::sqrt(g.shape) * g.scale; },
          [](const LogNormal& l) {
            const double s2 = l.sigma * l.sigma;
            return std::sqrt(std::expm1(s2)) * std::exp(l.mu + 0.5 * s2);
          },
          [](const Uniform& u) { return (u.hi - u.lo) / std::sqrt(12.0); },
      },
      params_);
}

std::string Distribution::describe() const {
  const auto p = parameters();
  std::string out(family_name(family()));
  out += " [";
  for (std::size_t i = 0; i < p.size(); ++i) out += fmt::format("{}{:.4g}", i ? ", " : "", p[i]);
  return out + "]";
}

double log_likelihood(const Distribution& d, std::span<const double> data) {
  double ll = 0.0;
  for (double x : data) {
    ll += d.log_pdf(x);
    if (!std::isfinite(ll)) return -kInf;
  }
  return ll;
}

double aic(int k_params, double loglik) { return 2.0 * k_params - 2.0 * loglik; }
double aic(const FitResult& fit) { return aic(fit.k_params, fit.loglik); }

FitResult fit_mle(std::span<const double> data, Family family, const FitOptions& options) {
  for (double x : data) {
    if (!std::isfinite(x)) throw DomainError("fit: non-finite datum");
    if ((family == Family::Gamma || family == Family::LogNormal) && !(x > 0.0)) {
      throw DomainError(fmt::format("{} fit: datum {} outside the support (0, inf)",
                                    family_name(family), x));
    }
  }
  if (family == Family::Uniform) {
    if (data.size() < 2) throw DomainError("Uniform fit needs at least two points");
    const auto [lo, hi] = std::minmax_element(data.begin(), data.end());
    if (!(*lo < *hi)) throw FitError("Uniform fit: all data equal", -kInf);
    return make_fit(Distribution(Uniform{*lo, *hi}), data);
  }
  if (data.size() < kMinimumFitSize) {
    throw DomainError(fmt::format("{} fit needs at least {} points (got {})",
                                  family_name(family), kMinimumFitSize, data.size()));
  }
  if (family == Family::LogNormal) {
    double mu = 0.0;
    for (double x : data) mu += std::log(x);
    mu /= static_cast<double>(data.size());
    double ss = 0.0;
    for (double x : data) ss += (std::log(x) - mu) * (std::log(x) - mu);
    const double sigma = std::sqrt(ss / static_cast<double>(data.size()));
    if (!(sigma > 0.0)) throw FitError("LogNormal fit: all data equal", -kInf);
    return make_fit(Distribution(LogNormal{mu, sigma}), data);
  }
  return fit_iterative(data, family, options);
}

std::vector<CandidateFit> fit_candidates(std::span<const double> data,
                                         std::span<const Family> families,
                                         const FitOptions& options) {
  std::vector<CandidateFit> out;
  for (Family f : families) {
    CandidateFit c{f, std::nullopt, {}};
    try {
      c.fit = fit_mle(data, f, options);
    } catch (const Error& e) {
      c.error = e.what();
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::size_t best_candidate(std::span<const CandidateFit> candidates) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& fit = candidates[i].fit;
    if (!fit) continue;
    if (!best) {
      best = i;
      continue;
    }
    const auto& current = *candidates[*best].fit;
    if (fit->aic < current.aic || (fit->aic == current.aic && fit->k_params < current.k_params)) {
      best = i;
    }
  }
  if (!best) {
    std::string why;
    for (const auto& c : candidates) why += fmt::format(" {}: {};", family_name(c.family), c.error);
    throw FitError("every candidate fit failed:" + why, -kInf);
  }
  return *best;
}

FitResult select_best(std::span<const double> data, std::span<const Family> families,
                      const FitOptions& options) {
  if (families.empty()) throw ConfigError("select_best: no candidate families");
  auto candidates = fit_candidates(data, families, options);
  return *candidates[best_candidate(candidates)].fit;
}

}  // namespace scourbench
