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

#ifndef SCOURBENCH_EQUATIONS_HPP_
#define SCOURBENCH_EQUATIONS_HPP_

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scourbench/equation_id.hpp"
#include "scourbench/factors.hpp"
#include "scourbench/parameters.hpp"

namespace scourbench {

inline constexpr double kGravity = 9.81;  // m/s^2

enum class ShapeTag { cylindrical, round_nose, square_nose, sharp_nose, group };

// Dimensionless multiplier that replaces an equation's own shape factor.
// Used when pier shape is sampled as a continuous quantity in [0.9, 2].
struct ShapeFactor {
  double value = 1.0;
  friend bool operator==(const ShapeFactor&, const ShapeFactor&) = default;
};

using PierShape = std::variant<ShapeTag, ShapeFactor>;

inline constexpr double kShapeFactorMin = 0.9;
inline constexpr double kShapeFactorMax = 2.0;

// "round-nose" etc. (CSV spelling).
std::string_view shape_name(ShapeTag tag) noexcept;
// Accepts a tag name or a decimal factor.
std::optional<PierShape> parse_shape(std::string_view text);
std::string format_shape(const PierShape& shape);

// Parameter vector consumed by the equations. Lengths are in metres, D50 in
// millimetres, theta in degrees; conversions happen inside the equations.
struct ScourInputs {
  double B = 0.0;
  std::optional<double> L;
  double y1 = 0.0;
  double V1 = 0.0;
  std::optional<double> Vc;
  double theta = 0.0;
  double D50 = 0.0;
  PierShape shape = ShapeTag::cylindrical;
  std::optional<double> S;
};

// Checks the value ranges every equation relies on; throws DomainError.
void validate(const ScourInputs& in);

// V / sqrt(g * length_scale). Throws DomainError for length_scale <= 0.
double froude(double velocity, double length_scale);

// Width projected normal to the flow: B cos(theta) + L sin(theta).
double effective_width(double B, double L, double theta_deg);

// (cos(theta) + r sin(theta))^exponent with the length ratio r capped.
double skew_factor(double theta_deg, double length_ratio, double exponent,
                   double max_length_ratio);

// Critical velocity Ku y1^(1/6) D50^(1/3) with D50 converted to metres.
double critical_velocity(double y1, double d50_mm,
                         const FactorSet& factors = FactorSet::builtin());

struct NamedFactor {
  std::string name;
  double value;
};

struct Evaluation {
  EquationId equation;
  double ys = 0.0;                  // metres
  std::vector<NamedFactor> factors;  // in the order they enter the formula
};

// Named factors ("K3", "Kpsp", ...) forced to a given value instead of being
// computed from the tables.
using FactorOverrides = std::map<std::string, double, std::less<>>;

// Full evaluation with the applied factor values.
Evaluation evaluate(EquationId eq, const ScourInputs& in,
                    const FactorSet& factors = FactorSet::builtin(),
                    const FactorOverrides& overrides = {});

// Scour depth in metres; throws IncompleteInputsError or DomainError.
double predict(EquationId eq, const ScourInputs& in,
               const FactorSet& factors = FactorSet::builtin());

double ciria(const ScourInputs& in, const FactorSet& factors = FactorSet::builtin());
double tamu(const ScourInputs& in, const FactorSet& factors = FactorSet::builtin());
double hec18(const ScourInputs& in, const FactorSet& factors = FactorSet::builtin());
double melville(const ScourInputs& in, const FactorSet& factors = FactorSet::builtin());
double froehlich(const ScourInputs& in, const FactorSet& factors = FactorSet::builtin());
double melville_sutherland(const ScourInputs& in,
                           const FactorSet& factors = FactorSet::builtin());
double chitale(const ScourInputs& in, const FactorSet& factors = FactorSet::builtin());
double laursen(const ScourInputs& in, const FactorSet& factors = FactorSet::builtin());

// Inputs each equation reads, directly or through its correction factors.
// Vc counts for the equations that need a flow-intensity ratio.
std::span<const Parameter> parameters_used(EquationId eq) noexcept;

// The bare Table-style formulas with every factor supplied by the caller.
namespace formula {

double ciria(double B, double k_shape, double k_depth, double k_velocity, double k_angle);
// Negative (2.6 F - Fc) is clamped to zero.
double tamu(double B_eff, double k_pw, double k_psh, double k_pa, double k_psp,
            double froude_pier, double froude_critical_pier);
double hec18(double y1, double B, double froude1, double k1, double k2, double k3);
double melville(double k_s, double k_theta, double k_i, double k_yb, double k_g, double k_d);
double froehlich(double B, double B_eff, double y1, double froude1, double d50_m, double phi);
double melville_sutherland(double B, double k_s, double k_a, double k_i, double k_y,
                           double k_d, double k_sigma);
// Clamped at zero.
double chitale(double y1, double froude);
double laursen(double B, double y1, double k_al, double k_sh);

}  // namespace formula

}  // namespace scourbench

#endif  // SCOURBENCH_EQUATIONS_HPP_
