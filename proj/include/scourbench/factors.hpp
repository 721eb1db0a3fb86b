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

#ifndef SCOURBENCH_FACTORS_HPP_
#define SCOURBENCH_FACTORS_HPP_

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "scourbench/equation_id.hpp"

namespace scourbench {

// Key/value correction-factor table parsed from a `*.factors` file. The file
// format is documented in factors/README.md.
class FactorTable {
 public:
  FactorTable() = default;

  // Throws ConfigError with the file name and line number on bad input.
  static FactorTable parse(std::string_view text, std::string name);

  double at(std::string_view key) const;
  std::optional<double> find(std::string_view key) const;

  const std::string& name() const noexcept { return name_; }
  const std::map<std::string, double, std::less<>>& entries() const noexcept {
    return entries_;
  }

 private:
  std::string name_;
  std::map<std::string, double, std::less<>> entries_;
};

class FactorSet {
 public:
  // Tables compiled into the library from the repository's factors/ directory.
  static const FactorSet& builtin();

  // Reads `<token>.factors` for every equation from `dir`.
  static FactorSet load_directory(const std::filesystem::path& dir);

  const FactorTable& table(EquationId eq) const noexcept {
    return tables_[static_cast<std::size_t>(eq)];
  }

 private:
  std::array<FactorTable, 8> tables_;
};

// File name of an equation's table, e.g. "melville_sutherland.factors".
std::string factor_file_name(EquationId eq);

// Raw text of the compiled-in table.
std::string_view embedded_factor_text(EquationId eq) noexcept;

}  // namespace scourbench

#endif  // SCOURBENCH_FACTORS_HPP_
