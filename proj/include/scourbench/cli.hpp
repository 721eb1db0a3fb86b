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

#ifndef SCOURBENCH_CLI_HPP_
#define SCOURBENCH_CLI_HPP_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

namespace scourbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitNumeric = 4;

// Runs the command line given without the program name, e.g.
// {"predict", "--equation", "hec18", ...}. Never throws.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

// Depth as printed by `predict`: metres, three decimals.
std::string format_depth(double ys);

std::string_view version() noexcept;

}  // namespace scourbench::cli

#endif  // SCOURBENCH_CLI_HPP_
