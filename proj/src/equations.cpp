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

#include "scourbench/equations.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "scourbench/errors.hpp"

namespace scourbench {
namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

constexpr std::array<std::string_view, 5> kShapeNames = {
    "cylindrical", "round-nose", "square-nose", "sharp-nose", "group"};
constexpr std::array<std::string_view, 5> kShapeKeys = {
    "cylindrical", "round_nose", "square_nose", "sharp_nose", "group"};

// Records every factor as it is resolved and applies caller overrides.
class FactorLog {
 public:
  explicit FactorLog(const FactorOverrides& overrides) : overrides_(overrides) {}

  double operator()(std::string_view name, double computed) {
    const auto it = overrides_.find(name);
    const double value = it == overrides_.end() ? computed : it->second;
    factors_.push_back({std::string(name), value});
    return value;
  }

  std::vector<NamedFactor> take() { return std::move(factors_); }

 private:
  const FactorOverrides& overrides_;
  std::vector<NamedFactor> factors_;
};

double shape_factor(const FactorTable& table, std::string_view prefix, const PierShape& shape) {
  if (const auto* f = std::get_if<ShapeFactor>(&shape)) return f->value;
  const auto tag = std::get<ShapeTag>(shape);
  return table.at(std::string(prefix) + "." + std::string(kShapeKeys[static_cast<int>(tag)]));
}

double require(const std::optional<double>& value, Parameter p, EquationId eq) {
  if (!value) {
    throw IncompleteInputsError(std::string(parameter_name(p)), std::string(display_name(eq)));
  }
  return *value;
}

// Pier length is only needed once the flow is skewed.
double length_or_width(const ScourInputs& in, EquationId eq) {
  if (in.L) return *in.L;
  if (in.theta == 0.0) return in.B;
  throw IncompleteInputsError("L", std::string(display_name(eq)));
}

double positive_vc(const ScourInputs& in, EquationId eq) {
  const double vc = require(in.Vc, Parameter::Vc, eq);
  if (!(vc > 0.0)) {
    throw DomainError(fmt::format("{}: critical velocity must be > 0 (got {})",
                                  display_name(eq), vc));
  }
  return vc;
}

// Sediment-size factor shared by the two Melville methods.
double sediment_factor(const FactorTable& t, double B, double d50_mm) {
  const double ratio = B / (d50_mm / 1000.0);
  if (ratio >= t.at("kd.threshold_ratio")) return 1.0;
  return std::max(0.0, t.at("kd.coefficient") * std::log10(t.at("kd.scale") * ratio));
}

double evaluate_ciria(const ScourInputs& in, const FactorTable& t, FactorLog& log) {
  constexpr auto eq = EquationId::CIRIA;
  const double L = length_or_width(in, eq);
  const double vc = positive_vc(in, eq);
  const double k_shape = log("Kshape", shape_factor(t, "shape", in.shape));
  const double ratio = in.y1 / in.B;
  const double depth_max = t.at("depth.max_value");
  const double k_depth = log(
      "Kdepth", ratio >= t.at("depth.transition_ratio")
                    ? depth_max
                    : depth_max * t.at("depth.coefficient") * std::pow(ratio, t.at("depth.exponent")));
  const double k_velocity =
      log("Kvelocity", std::min(in.V1 / vc, t.at("velocity.max_value")));
  const double k_angle = log("Kangle", skew_factor(in.theta, L / in.B, t.at("angle.exponent"),
                                                   t.at("angle.max_length_ratio")));
  return formula::ciria(in.B, k_shape, k_depth, k_velocity, k_angle);
}

double evaluate_tamu(const ScourInputs& in, const FactorTable& t, FactorLog& log) {
  constexpr auto eq = EquationId::TAMU;
  const double L = require(in.L, Parameter::L, eq);
  const double vc = positive_vc(in, eq);
  const double S = require(in.S, Parameter::S, eq);
  if (!(S > 0.0)) throw DomainError(fmt::format("TAMU: pier spacing must be > 0 (got {})", S));
  const double b_eff = log("B'", effective_width(in.B, L, in.theta));
  const double depth_ratio = in.y1 / b_eff;
  const double k_pw =
      log("Kpw", depth_ratio < t.at("kpw.threshold_ratio")
                     ? t.at("kpw.coefficient") * std::pow(depth_ratio, t.at("kpw.exponent"))
                     : 1.0);
  const double k_psh = log("Kpsh", shape_factor(t, "kpsh", in.shape));
  const double k_pa = log("Kpa", t.at("kpa"));
  const double spacing_ratio = S / b_eff;
  const double k_psp = log(
      "Kpsp", spacing_ratio < t.at("kpsp.threshold_ratio")
                  ? std::max(1.0, t.at("kpsp.coefficient") *
                                      std::pow(spacing_ratio, t.at("kpsp.exponent")))
                  : 1.0);
  const double fr = log("F(pier)", froude(in.V1, b_eff));
  const double fc = log("Fc(pier)", froude(vc, b_eff));
  return formula::tamu(b_eff, k_pw, k_psh, k_pa, k_psp, fr, fc);
}

double evaluate_hec18(const ScourInputs& in, const FactorTable& t, FactorLog& log) {
  constexpr auto eq = EquationId::HEC18;
  if (!(in.y1 > 0.0)) throw DomainError("HEC-18: flow depth y1 must be > 0");
  const double L = length_or_width(in, eq);
  const double k1 = log("K1", in.theta > t.at("k1.skew_override_deg")
                                  ? 1.0
                                  : shape_factor(t, "k1", in.shape));
  const double k2 = log("K2", skew_factor(in.theta, L / in.B, t.at("k2.exponent"),
                                          t.at("k2.max_length_ratio")));
  const double k3 = log("K3", t.at("k3"));
  const double fr = log("Fr1", froude(in.V1, in.y1));
  return formula::hec18(in.y1, in.B, fr, k1, k2, k3);
}

double evaluate_melville(const ScourInputs& in, const FactorTable& t, FactorLog& log) {
  constexpr auto eq = EquationId::Melville;
  const double L = length_or_width(in, eq);
  const double vc = positive_vc(in, eq);
  const double k_s = log("Ks", shape_factor(t, "ks", in.shape));
  const double k_theta = log("Ktheta", skew_factor(in.theta, L / in.B, t.at("ktheta.exponent"),
                                                   t.at("ktheta.max_length_ratio")));
  const double k_i = log("KI", std::min(in.V1 / vc, t.at("ki.max_value")));
  double k_yb = 0.0;
  if (in.y1 > 0.0) {
    const double ratio = in.B / in.y1;
    if (ratio < t.at("kyb.narrow_ratio")) {
      k_yb = t.at("kyb.narrow_coefficient") * in.B;
    } else if (ratio < t.at("kyb.wide_ratio")) {
      k_yb = t.at("kyb.intermediate_coefficient") * std::sqrt(in.y1 * in.B);
    } else {
      k_yb = t.at("kyb.wide_coefficient") * in.y1;
    }
  }
  k_yb = log("Kyb", k_yb);
  const double k_g = log("KG", t.at("kg"));
  const double k_d = log("Kd", sediment_factor(t, in.B, in.D50));
  return formula::melville(k_s, k_theta, k_i, k_yb, k_g, k_d);
}

double evaluate_froehlich(const ScourInputs& in, const FactorTable& t, FactorLog& log) {
  constexpr auto eq = EquationId::Froehlich;
  const double L = length_or_width(in, eq);
  const double phi = log("phi", shape_factor(t, "phi", in.shape));
  const double b_eff = log("B'", effective_width(in.B, L, in.theta));
  const double fr = log("Fr1", froude(in.V1, in.y1));
  return formula::froehlich(in.B, b_eff, in.y1, fr, in.D50 / 1000.0, phi);
}

double evaluate_melville_sutherland(const ScourInputs& in, const FactorTable& t,
                                    FactorLog& log) {
  constexpr auto eq = EquationId::MelvilleSutherland;
  const double L = length_or_width(in, eq);
  const double vc = positive_vc(in, eq);
  const double k_s = log("Ks", shape_factor(t, "ks", in.shape));
  const double k_a = log("Ka", skew_factor(in.theta, L / in.B, t.at("ka.exponent"),
                                           t.at("ka.max_length_ratio")));
  const double k_i = log("KI", t.at("ki.coefficient") * std::min(in.V1 / vc, 1.0));
  const double depth_ratio = in.y1 / in.B;
  const double k_y =
      log("Ky", depth_ratio < t.at("ky.threshold_ratio")
                    ? t.at("ky.coefficient") * std::pow(depth_ratio, t.at("ky.exponent"))
                    : 1.0);
  const double k_d = log("Kd", sediment_factor(t, in.B, in.D50));
  const double k_sigma = log("Ksigma", t.at("ksigma"));
  return formula::melville_sutherland(in.B, k_s, k_a, k_i, k_y, k_d, k_sigma);
}

double evaluate_chitale(const ScourInputs& in, const FactorTable&, FactorLog& log) {
  if (!(in.y1 > 0.0)) throw DomainError("Chitale: flow depth y1 must be > 0");
  const double fr = log("Fr", froude(in.V1, in.y1));
  return formula::chitale(in.y1, fr);
}

double evaluate_laursen(const ScourInputs& in, const FactorTable& t, FactorLog& log) {
  constexpr auto eq = EquationId::Laursen;
  const double L = length_or_width(in, eq);
  const double k_al = log("KaL", skew_factor(in.theta, L / in.B, t.at("kal.exponent"),
                                             t.at("kal.max_length_ratio")));
  const double k_sh = log("Ksh", shape_factor(t, "ksh", in.shape));
  return formula::laursen(in.B, in.y1, k_al, k_sh);
}

constexpr Parameter kCiriaParams[] = {Parameter::B,  Parameter::L,     Parameter::y1,
                                      Parameter::V1, Parameter::Vc,    Parameter::theta,
                                      Parameter::Sh};
constexpr Parameter kTamuParams[] = {Parameter::B,  Parameter::L,     Parameter::y1,
                                     Parameter::V1, Parameter::Vc,    Parameter::theta,
                                     Parameter::Sh, Parameter::S};
constexpr Parameter kHec18Params[] = {Parameter::B,  Parameter::L,     Parameter::y1,
                                      Parameter::V1, Parameter::theta, Parameter::Sh};
constexpr Parameter kMelvilleParams[] = {Parameter::B,     Parameter::L,   Parameter::y1,
                                         Parameter::V1,    Parameter::Vc,  Parameter::theta,
                                         Parameter::D50,   Parameter::Sh};
constexpr Parameter kFroehlichParams[] = {Parameter::B,     Parameter::L,   Parameter::y1,
                                          Parameter::V1,    Parameter::theta,
                                          Parameter::D50,   Parameter::Sh};
constexpr Parameter kChitaleParams[] = {Parameter::y1, Parameter::V1};
constexpr Parameter kLaursenParams[] = {Parameter::B, Parameter::L, Parameter::y1,
                                        Parameter::theta, Parameter::Sh};

}  // namespace

std::string_view shape_name(ShapeTag tag) noexcept { return kShapeNames[static_cast<int>(tag)]; }

std::optional<PierShape> parse_shape(std::string_view text) {
  for (std::size_t i = 0; i < kShapeNames.size(); ++i) {
    if (text == kShapeNames[i] || text == kShapeKeys[i]) return static_cast<ShapeTag>(i);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec == std::errc{} && ptr == text.data() + text.size()) return ShapeFactor{value};
  return std::nullopt;
}

std::string format_shape(const PierShape& shape) {
  if (const auto* f = std::get_if<ShapeFactor>(&shape)) return fmt::format("{}", f->value);
  return std::string(shape_name(std::get<ShapeTag>(shape)));
}

void validate(const ScourInputs& in) {
  auto fail = [](std::string_view what, double v) {
    throw DomainError(fmt::format("invalid inputs: {} (got {})", what, v));
  };
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(finite(in.B) && in.B > 0.0)) fail("B must be > 0", in.B);
  if (in.L && !(finite(*in.L) && *in.L > 0.0)) fail("L must be > 0", *in.L);
  if (!(finite(in.y1) && in.y1 >= 0.0)) fail("y1 must be >= 0", in.y1);
  if (!(finite(in.V1) && in.V1 >= 0.0)) fail("V1 must be >= 0", in.V1);
  if (in.Vc && !(finite(*in.Vc) && *in.Vc >= 0.0)) fail("Vc must be >= 0", *in.Vc);
  if (!(finite(in.theta) && in.theta >= 0.0 && in.theta <= 90.0)) {
    fail("theta must be in [0, 90] degrees", in.theta);
  }
  if (!(finite(in.D50) && in.D50 > 0.0)) fail("D50 must be > 0", in.D50);
  if (const auto* f = std::get_if<ShapeFactor>(&in.shape)) {
    if (!(f->value >= kShapeFactorMin && f->value <= kShapeFactorMax)) {
      fail("shape factor must be in [0.9, 2]", f->value);
    }
  }
  if (in.S && !(finite(*in.S) && *in.S > 0.0)) fail("S must be > 0", *in.S);
}

double froude(double velocity, double length_scale) {
  if (!(length_scale > 0.0)) {
    throw DomainError(fmt::format("froude: length scale must be > 0 (got {})", length_scale));
  }
  return velocity / std::sqrt(kGravity * length_scale);
}

double effective_width(double B, double L, double theta_deg) {
  const double a = theta_deg * kDegree;
  return B * std::cos(a) + L * std::sin(a);
}

double skew_factor(double theta_deg, double length_ratio, double exponent,
                   double max_length_ratio) {
  if (theta_deg == 0.0) return 1.0;
  const double a = theta_deg * kDegree;
  const double r = std::min(length_ratio, max_length_ratio);
  return std::pow(std::cos(a) + r * std::sin(a), exponent);
}

double critical_velocity(double y1, double d50_mm, const FactorSet& factors) {
  const double ku = factors.table(EquationId::HEC18).at("critical_velocity.ku");
  return ku * std::pow(y1, 1.0 / 6.0) * std::cbrt(d50_mm / 1000.0);
}

Evaluation evaluate(EquationId eq, const ScourInputs& in, const FactorSet& factors,
                    const FactorOverrides& overrides) {
  validate(in);
  FactorLog log(overrides);
  const FactorTable& t = factors.table(eq);
  double ys = 0.0;
  switch (eq) {
    case EquationId::CIRIA: ys = evaluate_ciria(in, t, log); break;
    case EquationId::TAMU: ys = evaluate_tamu(in, t, log); break;
    case EquationId::HEC18: ys = evaluate_hec18(in, t, log); break;
    case EquationId::Melville: ys = evaluate_melville(in, t, log); break;
    case EquationId::Froehlich: ys = evaluate_froehlich(in, t, log); break;
    case EquationId::MelvilleSutherland: ys = evaluate_melville_sutherland(in, t, log); break;
    case EquationId::Chitale: ys = evaluate_chitale(in, t, log); break;
    case EquationId::Laursen: ys = evaluate_laursen(in, t, log); break;
  }
  if (!std::isfinite(ys) || ys < 0.0) {
    throw DomainError(fmt::format("{}: non-physical scour depth {}", display_name(eq), ys));
  }
  return {eq, ys, log.take()};
}

double predict(EquationId eq, const ScourInputs& in, const FactorSet& factors) {
  return evaluate(eq, in, factors).ys;
}

double ciria(const ScourInputs& in, const FactorSet& f) { return predict(EquationId::CIRIA, in, f); }
double tamu(const ScourInputs& in, const FactorSet& f) { return predict(EquationId::TAMU, in, f); }
double hec18(const ScourInputs& in, const FactorSet& f) { return predict(EquationId::HEC18, in, f); }
double melville(const ScourInputs& in, const FactorSet& f) {
  return predict(EquationId::Melville, in, f);
}
double froehlich(const ScourInputs& in, const FactorSet& f) {
  return predict(EquationId::Froehlich, in, f);
}
double melville_sutherland(const ScourInputs& in, const FactorSet& f) {
  return predict(EquationId::MelvilleSutherland, in, f);
}
double chitale(const ScourInputs& in, const FactorSet& f) {
  return predict(EquationId::Chitale, in, f);
}
double laursen(const ScourInputs& in, const FactorSet& f) {
  return predict(EquationId::Laursen, in, f);
}

std::span<const Parameter> parameters_used(EquationId eq) noexcept {
  switch (eq) {
    case EquationId::CIRIA: return kCiriaParams;
    case EquationId::TAMU: return kTamuParams;
    case EquationId::HEC18: return kHec18Params;
    case EquationId::Melville: return kMelvilleParams;
    case EquationId::Froehlich: return kFroehlichParams;
    case EquationId::MelvilleSutherland: return kMelvilleParams;
    case EquationId::Chitale: return kChitaleParams;
    case EquationId::Laursen: return kLaursenParams;
  }
  return {};
}

namespace formula {

double ciria(double B, double k_shape, double k_depth, double k_velocity, double k_angle) {
  return B * k_shape * k_depth * k_velocity * k_angle;
}

double tamu(double B_eff, double k_pw, double k_psh, double k_pa, double k_psp,
            double froude_pier, double froude_critical_pier) {
  const double base = std::max(0.0, 2.6 * froude_pier - froude_critical_pier);
  return 2.2 * B_eff * k_pw * k_psh * k_pa * k_psp * std::pow(base, 0.7);
}

double hec18(double y1, double B, double froude1, double k1, double k2, double k3) {
  return 2.0 * y1 * k1 * k2 * k3 * std::pow(B / y1, 0.65) * std::pow(froude1, 0.43);
}

double melville(double k_s, double k_theta, double k_i, double k_yb, double k_g, double k_d) {
  return k_s * k_theta * k_i * k_yb * k_g * k_d;
}

double froehlich(double B, double B_eff, double y1, double froude1, double d50_m, double phi) {
  if (!(d50_m > 0.0)) throw DomainError("Froehlich: D50 must be > 0");
  return 0.32 * B * phi * std::pow(B_eff / B, 0.62) * std::pow(y1 / B, 0.46) *
         std::pow(froude1, 0.20) * std::pow(B / d50_m, 0.08);
}

double melville_sutherland(double B, double k_s, double k_a, double k_i, double k_y,
                           double k_d, double k_sigma) {
  return B * k_s * k_a * k_i * k_y * k_d * k_sigma;
}

double chitale(double y1, double froude) {
  return std::max(0.0, y1 * (-0.51 + 6.65 * froude - 5.49 * froude * froude) + y1);
}

double laursen(double B, double y1, double k_al, double k_sh) {
  if (!(B > 0.0)) throw DomainError("Laursen: pier width B must be > 0");
  return 1.5 * B * std::pow(y1 / B, 0.3) * k_al * k_sh;
}

}  // namespace formula
}  // namespace scourbench
