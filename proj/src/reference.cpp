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

#include "scourbench/reference.hpp"

#include <cmath>

#include <fmt/format.h>

#include "scourbench/errors.hpp"

namespace scourbench {
namespace {

using P = Parameter;

const std::vector<PublishedRow>& field_rows() {
  static const std::vector<PublishedRow> rows = {
      {P::B, PublishedStats{0.29, 22.86, 1.23, 1.14}, Family::GEV, {0.26, 0.82, 0.42}},
      {P::L, PublishedStats{2.44, 74.88, 11.15, 5.49}, Family::GEV, {0.015, 9.18, 3.12}},
      {P::y1, PublishedStats{0.10, 22.52, 3.96, 3.07}, Family::GEV, {0.23, 2.38, 1.87}},
      {P::V1, PublishedStats{0.02, 4.48, 1.26, 0.78}, Family::Gamma, {2.23, 0.71}},
      {P::theta, PublishedStats{0.0, 85.0, 19.91, 17.55}, Family::GEV, {0.37, 11.18, 8.36}},
      {P::D50, PublishedStats{0.01, 108.0, 19.08, 28.04}, Family::LogNormal, {1.25, 2.12}},
      {P::Sh, std::nullopt, Family::Uniform, {0.9, 2.0}},
      {P::S, std::nullopt, Family::Uniform, {1.0, 30.0}},
  };
  return rows;
}

const std::vector<PublishedRow>& lab_rows() {
  static const std::vector<PublishedRow> rows = {
      {P::B, PublishedStats{0.02, 0.92, 0.11, 0.14}, Family::GEV, {0.50, 0.06, 0.032}},
      {P::y1, PublishedStats{0.02, 1.90, 0.27, 0.24}, Family::GEV, {0.47, 0.15, 0.10}},
      {P::V1, PublishedStats{0.15, 2.16, 0.51, 0.32}, Family::GEV, {0.40, 0.34, 0.16}},
      {P::Vc, PublishedStats{0.22, 1.27, 0.44, 0.22}, Family::GEV, {0.50, 0.33, 0.089}},
      {P::D50, PublishedStats{0.22, 7.80, 1.23, 1.41}, Family::GEV, {0.85, 0.50, 0.38}},
      {P::Sh, std::nullopt, Family::Uniform, {0.9, 2.0}},
      {P::S, std::nullopt, Family::Uniform, {1.0, 5.0}},
  };
  return rows;
}

using E = EquationId;
using A = AccuracyBlock;

// Transcribed as printed, including rows whose counts do not add up to the
// block size.
const std::vector<PublishedAccuracy>& accuracy_rows() {
  static const std::vector<PublishedAccuracy> rows = {
      {A::lab, E::CIRIA, std::nullopt, {498, 87.5}, {71, 12.5}, {277, 48.7}, {267, 46.9}},
      {A::lab, E::TAMU, std::nullopt, {325, 57.1}, {244, 42.9}, {304, 53.4}, {254, 44.6}},
      {A::lab, E::HEC18, std::nullopt, {138, 24.3}, {431, 75.7}, {472, 83.0}, {402, 70.7}},
      {A::lab, E::Melville, std::nullopt, {541, 95.1}, {28, 4.90}, {51, 9.00}, {42, 7.4}},
      {A::lab, E::Froehlich, std::nullopt, {52, 9.1}, {517, 90.9}, {157, 27.6}, {83, 14.6}},
      {A::lab, E::MelvilleSutherland, std::nullopt, {306, 53.8}, {263, 46.2}, {119, 20.9}, {64, 11.2}},
      {A::lab, E::Chitale, std::nullopt, {34, 6.0}, {535, 94.0}, {44, 7.7}, {22, 3.9}},
      {A::lab, E::Laursen, std::nullopt, {105, 18.5}, {464, 81.5}, {464, 81.5}, {416, 73.1}},
      {A::field, E::CIRIA, std::nullopt, {178, 19.0}, {758, 81.0}, {339, 36.2}, {232, 24.8}},
      {A::field, E::TAMU, std::nullopt, {113, 12.1}, {732, 78.2}, {142, 15.2}, {87, 9.3}},
      {A::field, E::HEC18, std::nullopt, {97, 10.4}, {839, 89.6}, {207, 22.1}, {135, 14.4}},
      {A::field, E::Melville, std::nullopt, {54, 5.8}, {882, 94.2}, {71, 7.60}, {38, 4.1}},
      {A::field, E::Froehlich, std::nullopt, {641, 68.5}, {295, 31.5}, {272, 29.1}, {226, 24.1}},
      {A::field, E::MelvilleSutherland, std::nullopt, {131, 14.0}, {805, 86.0}, {203, 21.7}, {97, 10.4}},
      {A::field, E::Chitale, std::nullopt, {17, 1.8}, {919, 98.2}, {44, 4.7}, {22, 2.4}},
      {A::field, E::Laursen, std::nullopt, {20, 2.1}, {916, 97.9}, {172, 18.4}, {63, 6.7}},
      {A::field_le2m, E::CIRIA, 619, {161, 23.3}, {458, 74.0}, {267, 38.6}, {184, 26.6}},
      {A::field_le2m, E::TAMU, 495, {204, 41.2}, {291, 58.8}, {119, 24.0}, {75, 15.2}},
      {A::field_le2m, E::HEC18, 548, {90, 16.4}, {458, 83.6}, {131, 23.9}, {91, 16.6}},
      {A::field_le2m, E::Melville, 512, {53, 21.8}, {190, 78.2}, {65, 26.7}, {35, 14.4}},
      {A::field_le2m, E::Froehlich, 916, {641, 70.0}, {275, 30.0}, {271, 29.6}, {225, 24.6}},
      {A::field_le2m, E::MelvilleSutherland, 512, {128, 25.0}, {384, 75.0}, {129, 25.2}, {73, 14.3}},
      {A::field_le2m, E::Chitale, 162, {17, 10.6}, {144, 89.4}, {37, 23.0}, {21, 13.0}},
      {A::field_le2m, E::Laursen, 446, {12, 2.7}, {434, 97.3}, {67, 15.0}, {20, 4.5}},
  };
  return rows;
}

double moment_mismatch(const Distribution& d, const PublishedStats& s) {
  double score = 0.0;
  const double mean = d.mean();
  if (std::isfinite(mean) && mean > 0.0) score += std::abs(std::log(mean / s.mean));
  const double sd = d.stddev();
  if (std::isfinite(sd) && sd > 0.0) score += std::abs(std::log(sd / s.sd));
  return score;
}

}  // namespace

std::span<const PublishedRow> published_rows(DataSource source) {
  return source == DataSource::field ? field_rows() : lab_rows();
}

const PublishedRow* find_published_row(DataSource source, Parameter p) {
  for (const auto& row : published_rows(source)) {
    if (row.parameter == p) return &row;
  }
  return nullptr;
}

Distribution interpret_bracket(Family family, std::span<const double> b, BracketReading reading) {
  const bool swapped = reading == BracketReading::swapped;
  switch (family) {
    case Family::GEV:
      return swapped ? Distribution(Gev{b[0], b[2], b[1]}) : Distribution(Gev{b[0], b[1], b[2]});
    case Family::Gamma:
      return swapped ? Distribution(GammaDist{b[0], 1.0 / b[1]})
                     : Distribution(GammaDist{b[0], b[1]});
    case Family::LogNormal:
    case Family::Uniform:
      return Distribution::from_parameters(family, b);
  }
  throw ConfigError("unknown family");
}

ConventionCheck check_bracket_convention(Family family) {
  ConventionCheck check{family, 0.0, 0.0, BracketReading::printed};
  for (DataSource source : {DataSource::field, DataSource::lab}) {
    for (const auto& row : published_rows(source)) {
      if (row.family != family || !row.stats) continue;
      check.printed_score +=
          moment_mismatch(interpret_bracket(family, row.bracket, BracketReading::printed), *row.stats);
      check.swapped_score +=
          moment_mismatch(interpret_bracket(family, row.bracket, BracketReading::swapped), *row.stats);
    }
  }
  if (check.swapped_score < check.printed_score) check.chosen = BracketReading::swapped;
  return check;
}

Distribution published_marginal(DataSource source, Parameter p) {
  const auto* row = find_published_row(source, p);
  if (!row) {
    throw ConfigError(fmt::format("no published {} marginal for {}", source_name(source),
                                  parameter_name(p)));
  }
  static const BracketReading gev = check_bracket_convention(Family::GEV).chosen;
  static const BracketReading gamma = check_bracket_convention(Family::Gamma).chosen;
  const BracketReading reading = row->family == Family::GEV     ? gev
                                 : row->family == Family::Gamma ? gamma
                                                                : BracketReading::printed;
  return interpret_bracket(row->family, row->bracket, reading);
}

std::optional<int> published_block_size(AccuracyBlock block) {
  switch (block) {
    case AccuracyBlock::lab:
      return 568;
    case AccuracyBlock::field:
      return 936;
    case AccuracyBlock::field_le2m:
      return std::nullopt;
  }
  return std::nullopt;
}

std::span<const PublishedAccuracy> published_accuracy() { return accuracy_rows(); }

const PublishedAccuracy* find_published_accuracy(AccuracyBlock block, EquationId eq) {
  for (const auto& row : accuracy_rows()) {
    if (row.block == block && row.equation == eq) return &row;
  }
  return nullptr;
}

}  // namespace scourbench
