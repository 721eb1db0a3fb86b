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

#include "scourbench/parameters.hpp"

namespace scourbench {
namespace {

constexpr std::array<std::string_view, 9> kNames = {"B",     "L",   "y1", "V1", "Vc",
                                                     "theta", "D50", "Sh", "S"};
constexpr std::array<std::string_view, 9> kUnits = {"m",   "m",  "m", "m/s", "m/s",
                                                    "deg", "mm", "-", "m"};

}  // namespace

std::string_view parameter_name(Parameter p) noexcept { return kNames[index_of(p)]; }

std::string_view parameter_unit(Parameter p) noexcept { return kUnits[index_of(p)]; }

std::optional<Parameter> parse_parameter(std::string_view name) noexcept {
  for (Parameter p : kAllParameters) {
    if (kNames[index_of(p)] == name) return p;
  }
  return std::nullopt;
}

std::string_view source_name(DataSource s) noexcept {
  return s == DataSource::lab ? "lab" : "field";
}

std::optional<DataSource> parse_source(std::string_view name) noexcept {
  if (name == "lab") return DataSource::lab;
  if (name == "field") return DataSource::field;
  return std::nullopt;
}

}  // namespace scourbench
