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

#include "scourbench/factors.hpp"

#include <charconv>
#include <fstream>
#include <iterator>
#include <string>

#include "scourbench/errors.hpp"

namespace scourbench {
namespace {

constexpr std::string_view kMagic = "# scourbench-factors v1";

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

FactorTable FactorTable::parse(std::string_view text, std::string name) {
  FactorTable table;
  table.name_ = std::move(name);
  std::size_t line_no = 0;
  bool saw_magic = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    line = trim(line);
    if (line_no == 1) {
      if (line != kMagic) {
        throw ConfigError(table.name_ + ":1: missing '" + std::string(kMagic) + "' header");
      }
      saw_magic = true;
      continue;
    }
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    const auto where = table.name_ + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value_text = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key");
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
    if (ec != std::errc{} || ptr != value_text.data() + value_text.size()) {
      throw ConfigError(where + ": not a number: '" + std::string(value_text) + "'");
    }
    if (!table.entries_.emplace(std::string(key), value).second) {
      throw ConfigError(where + ": duplicate key '" + std::string(key) + "'");
    }
  }
  if (!saw_magic) throw ConfigError(table.name_ + ": empty factor file");
  return table;
}

double FactorTable::at(std::string_view key) const {
  if (auto v = find(key)) return *v;
  throw ConfigError(name_ + ": missing factor '" + std::string(key) + "'");
}

std::optional<double> FactorTable::find(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::string factor_file_name(EquationId eq) {
  std::string name(token(eq));
  for (char& c : name) {
    if (c == '-') c = '_';
  }
  return name + ".factors";
}

const FactorSet& FactorSet::builtin() {
  static const FactorSet set = [] {
    FactorSet s;
    for (EquationId eq : kAllEquations) {
      s.tables_[static_cast<std::size_t>(eq)] =
          FactorTable::parse(embedded_factor_text(eq), factor_file_name(eq));
    }
    return s;
  }();
  return set;
}

FactorSet FactorSet::load_directory(const std::filesystem::path& dir) {
  FactorSet s;
  for (EquationId eq : kAllEquations) {
    const auto path = dir / factor_file_name(eq);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open factor table " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    s.tables_[static_cast<std::size_t>(eq)] = FactorTable::parse(text, path.string());
  }
  return s;
}

}  // namespace scourbench
