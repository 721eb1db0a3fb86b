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

#include "scourbench/equation_id.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace scourbench {
namespace {

struct Names {
  std::string_view display;
  std::string_view token;
};

constexpr std::array<Names, 8> kNames = {{
    {"CIRIA", "ciria"},
    {"TAMU", "tamu"},
    {"HEC-18", "hec18"},
    {"Melville", "melville"},
    {"Froehlich", "froehlich"},
    {"Melville & Sutherland", "melville-sutherland"},
    {"Chitale", "chitale"},
    {"Laursen", "laursen"},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string_view display_name(EquationId eq) noexcept {
  return kNames[static_cast<std::size_t>(eq)].display;
}

std::string_view token(EquationId eq) noexcept {
  return kNames[static_cast<std::size_t>(eq)].token;
}

std::optional<EquationId> parse_equation(std::string_view name) noexcept {
  const std::string wanted = lower(name);
  for (EquationId eq : kAllEquations) {
    const auto& n = kNames[static_cast<std::size_t>(eq)];
    if (wanted == n.token || wanted == lower(n.display)) return eq;
  }
  if (wanted == "hec-18") return EquationId::HEC18;
  if (wanted == "melville_sutherland") return EquationId::MelvilleSutherland;
  return std::nullopt;
}

}  // namespace scourbench
