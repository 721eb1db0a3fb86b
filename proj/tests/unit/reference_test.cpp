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

#include "scourbench/errors.hpp"
#include "scourbench/reference.hpp"

using namespace scourbench;
using Catch::Approx;

TEST_CASE("published tables have the expected rows", "[reference]") {
  CHECK(published_rows(DataSource::field).size() == 8);
  CHECK(published_rows(DataSource::lab).size() == 7);
  CHECK(find_published_row(DataSource::lab, Parameter::L) == nullptr);
  CHECK(find_published_row(DataSource::field, Parameter::Vc) == nullptr);
  const auto* b = find_published_row(DataSource::field, Parameter::B);
  REQUIRE(b);
  CHECK(b->stats->min == 0.29);
  CHECK(b->stats->max == 22.86);
  CHECK(b->stats->mean == 1.23);
  CHECK(b->stats->sd == 1.14);
  const auto* y1 = find_published_row(DataSource::lab, Parameter::y1);
  CHECK(y1->stats->min == 0.02);
  CHECK(y1->stats->max == 1.90);
  CHECK(y1->stats->mean == 0.27);
  CHECK(y1->stats->sd == 0.24);
}

TEST_CASE("bracket convention is resolved from the moments", "[reference]") {
  const auto gev = check_bracket_convention(Family::GEV);
  CHECK(gev.chosen == BracketReading::swapped);
  CHECK(gev.swapped_score < gev.printed_score);
  const auto gamma = check_bracket_convention(Family::Gamma);
  CHECK(gamma.chosen == BracketReading::printed);
}

TEST_CASE("published marginals", "[reference]") {
  const auto L = published_marginal(DataSource::field, Parameter::L);
  CHECK(L.family() == Family::GEV);
  CHECK(L.mean() == Approx(11.03).margin(0.01));
  const auto V1 = published_marginal(DataSource::field, Parameter::V1);
  CHECK(V1.mean() == Approx(2.23 * 0.71));
  const auto S = published_marginal(DataSource::lab, Parameter::S);
  CHECK(S.quantile(0.5) == Approx(3.0));
  CHECK_THROWS_AS(published_marginal(DataSource::lab, Parameter::theta), ConfigError);
}
