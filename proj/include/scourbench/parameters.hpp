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

#ifndef SCOURBENCH_PARAMETERS_HPP_
#define SCOURBENCH_PARAMETERS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace scourbench {

// Inputs shared by the eight equations, in the order the reports use.
enum class Parameter { B, L, y1, V1, Vc, theta, D50, Sh, S };

inline constexpr std::array<Parameter, 9> kAllParameters = {
    Parameter::B,     Parameter::L,   Parameter::y1, Parameter::V1, Parameter::Vc,
    Parameter::theta, Parameter::D50, Parameter::Sh, Parameter::S};

inline constexpr std::size_t index_of(Parameter p) noexcept {
  return static_cast<std::size_t>(p);
}

std::string_view parameter_name(Parameter p) noexcept;
std::string_view parameter_unit(Parameter p) noexcept;
std::optional<Parameter> parse_parameter(std::string_view name) noexcept;

enum class DataSource { lab, field };

std::string_view source_name(DataSource s) noexcept;
std::optional<DataSource> parse_source(std::string_view name) noexcept;

}  // namespace scourbench

#endif  // SCOURBENCH_PARAMETERS_HPP_
