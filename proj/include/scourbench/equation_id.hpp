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

#ifndef SCOURBENCH_EQUATION_ID_HPP_
#define SCOURBENCH_EQUATION_ID_HPP_

#include <array>
#include <optional>
#include <string_view>

namespace scourbench {

enum class EquationId {
  CIRIA,
  TAMU,
  HEC18,
  Melville,
  Froehlich,
  MelvilleSutherland,
  Chitale,
  Laursen,
};

inline constexpr std::array<EquationId, 8> kAllEquations = {
    EquationId::CIRIA,     EquationId::TAMU,
    EquationId::HEC18,     EquationId::Melville,
    EquationId::Froehlich, EquationId::MelvilleSutherland,
    EquationId::Chitale,   EquationId::Laursen};

// Display name used in reports ("HEC-18", "Melville & Sutherland").
std::string_view display_name(EquationId eq) noexcept;

// Lower-case token used on the command line and in file names
// ("hec18", "melville-sutherland").
std::string_view token(EquationId eq) noexcept;

// Accepts the token or the display name, case-insensitively.
std::optional<EquationId> parse_equation(std::string_view name) noexcept;

}  // namespace scourbench

#endif  // SCOURBENCH_EQUATION_ID_HPP_
