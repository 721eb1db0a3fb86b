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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "scourbench/distributions.hpp"
#include "scourbench/errors.hpp"

using Catch::Approx;
using namespace scourbench;

namespace {

std::vector<Distribution> zoo() {
  return {
      Distribution(Gev{0.26, 0.42, 0.82}),   Distribution(Gev{0.015, 3.12, 9.18}),
      Distribution(Gev{0.37, 8.36, 11.18}),  Distribution(Gev{0.85, 0.38, 0.50}),
      Distribution(Gev{-0.2, 1.0, 0.0}),     Distribution(Gev{0.0, 2.0, 1.0}),
      Distribution(GammaDist{2.23, 0.71}),   Distribution(GammaDist{0.7, 3.0}),
      Distribution(LogNormal{1.25, 2.12}),   Distribution(LogNormal{0.0, 0.3}),
      Distribution(Uniform{0.9, 2.0}),       Distribution(Uniform{1.0, 30.0}),
  };
}

std::vector<double> draw(const Distribution& d, std::size_t n, std::uint64_t stream) {
  RandomStream rng(2024, stream);
  std::vector<double> out(n);
  for (auto& x : out) x = d.sample(rng);
  return out;
}

}  // namespace

TEST_CASE("closed-form values", "[distributions]") {
  CHECK(cdf(Distribution(Uniform{0, 1}), 0.25) == 0.25);
  CHECK(quantile(Distribution(LogNormal{0, 1}), 0.5) == Approx(1.0).epsilon(1e-14));
  CHECK(Distribution(Gev{0.0, 1.0, 0.0}).cdf(0.0) == Approx(std::exp(-1.0)));
  CHECK(Distribution(GammaDist{1.0, 2.0}).cdf(2.0) == Approx(1.0 - std::exp(-1.0)));
  CHECK_THROWS_AS(quantile(Distribution(Uniform{0, 1}), 0.0), DomainError);
  CHECK_THROWS_AS(quantile(Distribution(Uniform{0, 1}), 1.0), DomainError);
  CHECK_THROWS_AS(Distribution(Uniform{1, 1}), DomainError);
  CHECK_THROWS_AS(Distribution(Gev{0.1, 0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Distribution(GammaDist{-1.0, 1.0}), DomainError);
}

TEST_CASE("Gamma Monte-Carlo mean", "[distributions]") {
  const auto xs = draw(Distribution(GammaDist{2.0, 1.0}), 1'000'000, 1);
  double sum = 0.0;
  for (double x : xs) sum += x;
  CHECK(sum / xs.size() == Approx(2.0).margin(0.01));
}

TEST_CASE("pdf integrates to one", "[distributions]") {
  for (const auto& d : zoo()) {
    INFO(d.describe());
    const double lo = d.quantile(1e-10);
    const double hi = d.quantile(1.0 - 1e-10);
    double mass = 0.0;
    // Split at the quartiles so the heavy tails get their own panels.
    std::vector<double> cuts = {lo, d.quantile(0.01), d.quantile(0.25), d.quantile(0.5),
                                d.quantile(0.75), d.quantile(0.99), hi};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      mass += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          [&](double x) { return d.pdf(x); }, cuts[i], cuts[i + 1], 15, 1e-13);
    }
    CHECK(std::abs(mass - (1.0 - 2e-10)) <= 1e-6);
  }
}

TEST_CASE("quantile and cdf invert each other", "[distributions]") {
  for (const auto& d : zoo()) {
    INFO(d.describe());
    for (double p = 0.001; p < 0.999; p += 0.0071) {
      CHECK(std::abs(d.cdf(d.quantile(p)) - p) <= 1e-9);
    }
    for (double p = 0.002; p < 0.998; p += 0.0133) {
      const double x = d.quantile(p);
      CHECK(std::abs(d.quantile(d.cdf(x)) - x) <= 1e-9 * std::max(1.0, std::abs(x)));
    }
  }
}

TEST_CASE("cdf is monotone", "[distributions]") {
  for (const auto& d : zoo()) {
    double previous = 0.0;
    for (double p = 0.0005; p < 1.0; p += 0.001) {
      const double value = d.cdf(d.quantile(p) * 1.0);
      CHECK(value >= previous);
      previous = value;
    }
  }
}

TEST_CASE("moments agree with sampling", "[distributions]") {
  const Distribution gamma(GammaDist{2.23, 0.71});
  CHECK(gamma.mean() == Approx(2.23 * 0.71));
  CHECK(gamma.stddev() == Approx(std::sqrt(2.23) * 0.71));
  CHECK(Distribution(Gev{0.85, 0.38, 0.5}).stddev() == std::numeric_limits<double>::infinity());
  const Distribution gev(Gev{0.2, 1.0, 3.0});
  const auto xs = draw(gev, 400'000, 9);
  double sum = 0.0;
  for (double x : xs) sum += x;
  CHECK(sum / xs.size() == Approx(gev.mean()).margin(0.02));
}

TEST_CASE("maximum likelihood recovers known parameters", "[distributions]") {
  SECTION("LogNormal") {
    const auto xs = draw(Distribution(LogNormal{1.25, 2.12}), 10'000, 2);
    const auto fit = fit_mle(xs, Family::LogNormal);
    const auto p = fit.distribution.parameters();
    CHECK(p[0] == Approx(1.25).margin(0.05));
    CHECK(p[1] == Approx(2.12).margin(0.05));
  }
  SECTION("Gamma") {
    const auto xs = draw(Distribution(GammaDist{2.23, 0.71}), 10'000, 3);
    const auto p = fit_mle(xs, Family::Gamma).distribution.parameters();
    CHECK(p[0] == Approx(2.23).margin(0.08));
    CHECK(p[1] == Approx(0.71).margin(0.03));
  }
  SECTION("GEV") {
    const auto xs = draw(Distribution(Gev{0.26, 0.42, 0.82}), 10'000, 4);
    const auto fit = fit_mle(xs, Family::GEV);
    const auto p = fit.distribution.parameters();
    CHECK(p[0] == Approx(0.26).margin(0.03));
    CHECK(p[1] == Approx(0.42).margin(0.015));
    CHECK(p[2] == Approx(0.82).margin(0.015));
    // The optimum beats the generating parameters on this sample.
    CHECK(fit.loglik >= log_likelihood(Distribution(Gev{0.26, 0.42, 0.82}), xs));
  }
  SECTION("GEV near the Gumbel limit") {
    const auto xs = draw(Distribution(Gev{0.0, 3.12, 9.18}), 10'000, 5);
    const auto p = fit_mle(xs, Family::GEV).distribution.parameters();
    CHECK(p[0] == Approx(0.0).margin(0.03));
    CHECK(p[1] == Approx(3.12).margin(0.1));
    CHECK(p[2] == Approx(9.18).margin(0.1));
  }
  SECTION("Uniform") {
    const std::vector<double> xs = {1, 2, 3};
    const auto fit = fit_mle(xs, Family::Uniform);
    CHECK(fit.distribution.parameters() == std::vector<double>{1, 3});
    CHECK(fit.loglik == Approx(-3.0 * std::log(2.0)));
  }
}

TEST_CASE("fit preconditions", "[distributions]") {
  const std::vector<double> negative = {-1, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK_THROWS_AS(fit_mle(negative, Family::Gamma), DomainError);
  CHECK_THROWS_AS(fit_mle(negative, Family::LogNormal), DomainError);
  const std::vector<double> short_data = {1, 2, 3};
  CHECK_THROWS_AS(fit_mle(short_data, Family::GEV), DomainError);
  const std::vector<double> flat(20, 4.0);
  CHECK_THROWS_AS(fit_mle(flat, Family::Gamma), FitError);
}

TEST_CASE("AIC", "[distributions]") {
  CHECK(aic(2, -10.0) == 24.0);
  CHECK(aic(3, 0.0) == 6.0);
  const Distribution d(Uniform{0, 1});
  const FitResult lower{d, -12.0, 2, aic(2, -12.0)};
  const FitResult higher{d, -11.0, 2, aic(2, -11.0)};
  CHECK(aic(higher) < aic(lower));
  CHECK(aic(lower) == lower.aic);
}

TEST_CASE("model selection", "[distributions]") {
  SECTION("uniform grid picks Uniform, confirmed by brute-force AIC") {
    std::vector<double> grid;
    for (int i = 0; i < 500; ++i) grid.push_back((i + 0.5) / 500.0);
    const auto candidates = fit_candidates(grid, kAllFamilies);
    double best_aic = std::numeric_limits<double>::infinity();
    Family best_family = Family::GEV;
    for (const auto& c : candidates) {
      REQUIRE(c.fit);
      double ll = 0.0;
      for (double x : grid) ll += std::log(c.fit->distribution.pdf(x));
      const double brute = 2.0 * parameter_count(c.family) - 2.0 * ll;
      CHECK(brute == Approx(c.fit->aic).epsilon(1e-9));
      if (brute < best_aic) {
        best_aic = brute;
        best_family = c.family;
      }
    }
    CHECK(best_family == Family::Uniform);
    CHECK(select_best(grid, kAllFamilies).distribution.family() == Family::Uniform);
  }
  SECTION("lognormal sample picks LogNormal") {
    const auto xs = draw(Distribution(LogNormal{1.25, 2.12}), 2'000, 6);
    CHECK(select_best(xs, kAllFamilies).distribution.family() == Family::LogNormal);
  }
  SECTION("ties go to fewer parameters, then declaration order") {
    const Distribution d(Uniform{0, 1});
    std::vector<CandidateFit> tied = {
        {Family::GEV, FitResult{d, -1.0, 3, 10.0}, {}},
        {Family::Gamma, FitResult{d, -1.0, 2, 10.0}, {}},
        {Family::LogNormal, FitResult{d, -1.0, 2, 10.0}, {}},
    };
    CHECK(best_candidate(tied) == 1);
    std::vector<CandidateFit> failed = {{Family::GEV, std::nullopt, "boom"}};
    CHECK_THROWS_AS(best_candidate(failed), FitError);
  }
}
