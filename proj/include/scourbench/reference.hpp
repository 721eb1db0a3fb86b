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

#ifndef SCOURBENCH_REFERENCE_HPP_
#define SCOURBENCH_REFERENCE_HPP_

#include <optional>
#include <span>
#include <vector>

#include "scourbench/distributions.hpp"
#include "scourbench/equation_id.hpp"
#include "scourbench/parameters.hpp"

namespace scourbench {

// Published parameter ranges for the USGS pier-scour data: the OAT summary
// (min, max, mean, standard deviation) and the GSA marginal exactly as
// printed, i.e. family plus the bracketed numbers in printed order.
struct PublishedStats {
  double min;
  double max;
  double mean;
  double sd;
};

struct PublishedRow {
  Parameter parameter;
  std::optional<PublishedStats> stats;  // absent for Sh and S
  Family family;
  std::vector<double> bracket;
};

std::span<const PublishedRow> published_rows(DataSource source);
const PublishedRow* find_published_row(DataSource source, Parameter p);

// How the printed brackets map onto distribution parameters.
enum class BracketReading {
  printed,  // GEV [shape, scale, location]; Gamma [shape, scale]
  swapped,  // GEV [shape, location, scale]; Gamma [shape, rate]
};

struct ConventionCheck {
  Family family;
  double printed_score;  // summed |log| moment mismatch over the rows
  double swapped_score;
  BracketReading chosen;
};

// Scores both readings of every published row of the family against the
// same row's mean and standard deviation and keeps the printed reading
// unless the swapped one fits the moments better. Rows whose implied
// moment is infinite contribute only the moments that exist.
ConventionCheck check_bracket_convention(Family family);

Distribution interpret_bracket(Family family, std::span<const double> bracket,
                               BracketReading reading);

// Published marginal with the resolved bracket convention applied.
Distribution published_marginal(DataSource source, Parameter p);

// Published accuracy counts: measured against predicted scour, per
// equation and data block.
enum class AccuracyBlock { lab, field, field_le2m };

struct CountShare {
  int n;
  double pct;
};

struct PublishedAccuracy {
  AccuracyBlock block;
  EquationId equation;
  std::optional<int> n;  // per-row n; the lab and field blocks state theirs once
  CountShare under;
  CountShare over;
  CountShare pm50;
  CountShare factor15;
};

// Stated size of the lab (568) and field (936) blocks.
std::optional<int> published_block_size(AccuracyBlock block);
std::span<const PublishedAccuracy> published_accuracy();
const PublishedAccuracy* find_published_accuracy(AccuracyBlock block, EquationId eq);

}  // namespace scourbench

#endif  // SCOURBENCH_REFERENCE_HPP_
