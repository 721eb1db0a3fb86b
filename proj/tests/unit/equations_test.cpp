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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <thread>
#include <vector>

#include "scourbench/equations.hpp"
#include "scourbench/errors.hpp"

using Catch::Approx;
using namespace scourbench;

namespace {

ScourInputs field_means() {
  ScourInputs in;
  in.B = 1.23;
  in.L = 11.15;
  in.y1 = 3.96;
  in.V1 = 1.26;
  in.theta = 19.91;
  in.D50 = 19.08;
  in.shape = ShapeTag::cylindrical;
  in.S = 3.0;
  in.Vc = critical_velocity(in.y1, in.D50);
  return in;
}

ScourInputs lab_means() {
  ScourInputs in;
  in.B = 0.11;
  in.L = 0.11 * 11.7;
  in.y1 = 0.27;
  in.V1 = 0.51;
  in.Vc = 0.44;
  in.theta = 0.0;
  in.D50 = 1.23;
  in.S = 3.0;
  return in;
}

}  // namespace

TEST_CASE("froude number", "[equations]") {
  CHECK(froude(0.0, 1.0) == 0.0);
  CHECK(froude(std::sqrt(9.81), 1.0) == Approx(1.0).epsilon(1e-15));
  CHECK(froude(1.26, 3.96) == Approx(0.2021).margin(1e-3));
  CHECK_THROWS_AS(froude(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(froude(1.0, -2.0), DomainError);
}

TEST_CASE("effective width", "[equations]") {
  CHECK(effective_width(1.0, 10.0, 0.0) == 1.0);
  CHECK(effective_width(1.0, 10.0, 90.0) == Approx(10.0).epsilon(1e-12));
  CHECK(effective_width(1.0, 11.7, 20.0) == Approx(4.941).margin(5e-3));
  // Non-decreasing up to the angle where the projection peaks, atan(L/B).
  const double peak = std::atan(3.0) * 180.0 / 3.14159265358979323846;
  double previous = 0.0;
  for (double theta = 0.0; theta <= peak; theta += 0.5) {
    const double b = effective_width(1.0, 3.0, theta);
    CHECK(b >= previous - 1e-12);
    previous = b;
  }
}

TEST_CASE("bare formulas", "[equations]") {
  SECTION("CIRIA") {
    CHECK(formula::ciria(1.0, 1, 1, 1, 1) == 1.0);
    CHECK(formula::ciria(2.0, 1.2, 1.0, 1.5, 1.0) == Approx(3.6));
  }
  SECTION("TAMU") {
    // 2.6 F - Fc = 1
    CHECK(formula::tamu(1.0, 1, 1, 1, 1, 1.0 / 2.6 * 2.0, 1.0) == Approx(2.2));
    CHECK(formula::tamu(1.0, 1, 1, 1, 1, 0.1, 0.5) == 0.0);
    CHECK(formula::tamu(1.0, 1, 1, 1, 1, 1.0 / 2.6, 0.5) == Approx(1.354).margin(1e-3));
  }
  SECTION("HEC-18") {
    CHECK(formula::hec18(1.0, 1.0, 1.0, 1, 1, 1) == 2.0);
    CHECK(formula::hec18(3.96, 1.23, froude(1.26, 3.96), 1, 1, 1) ==
          Approx(1.862).margin(5e-3));
  }
  SECTION("Melville") {
    CHECK(formula::melville(1, 1, 1, 1, 1, 1) == 1.0);
    CHECK(formula::melville(1, 1, 0, 2.4, 1, 1) == 0.0);
  }
  SECTION("Froehlich") {
    CHECK(formula::froehlich(1, 1, 1, 1, 1.0, 1) == Approx(0.32));
    CHECK(formula::froehlich(1, 1, 2, 0.5, 0.010, 1) == Approx(0.554).margin(2e-3));
    CHECK_THROWS_AS(formula::froehlich(1, 1, 2, 0.5, 0.0, 1), DomainError);
  }
  SECTION("Melville & Sutherland") {
    CHECK(formula::melville_sutherland(1, 1, 1, 1, 1, 1, 1) == 1.0);
    CHECK(formula::melville_sutherland(1, 1, 1, 0, 1, 1, 1) == 0.0);
    CHECK(formula::melville_sutherland(2, 1.2, 1, 1, 1, 1, 1) == Approx(2.4));
  }
  SECTION("Chitale") {
    CHECK(formula::chitale(1.0, 0.0) == Approx(0.49));
    CHECK(formula::chitale(1.0, 0.2) == Approx(1.6004).margin(1e-4));
    CHECK(formula::chitale(2.0, 0.2) == Approx(3.2008).margin(2e-4));
    CHECK(formula::chitale(1.0, 2.0) == 0.0);  // negative polynomial clamps
  }
  SECTION("Laursen") {
    CHECK(formula::laursen(1, 1, 1, 1) == Approx(1.5));
    CHECK(formula::laursen(1, 0, 1, 1) == 0.0);
    CHECK(formula::laursen(2, 1, 1, 1) == Approx(2.437).margin(1e-3));
    CHECK_THROWS_AS(formula::laursen(0, 1, 1, 1), DomainError);
  }
}

TEST_CASE("dispatcher worked examples", "[equations]") {
  ScourInputs unit;
  unit.B = 1.0;
  unit.L = 1.0;
  unit.y1 = 1.0;
  unit.V1 = std::sqrt(kGravity);
  unit.D50 = 1.0;
  // K1 = K2 = 1 for an aligned cylinder; K3 forced to 1.
  CHECK(evaluate(EquationId::HEC18, unit, FactorSet::builtin(), {{"K3", 1.0}}).ys ==
        Approx(2.0));

  ScourInputs still = unit;
  still.V1 = 0.0;
  CHECK(predict(EquationId::Chitale, still) == Approx(0.49));

  ScourInputs wide;
  wide.B = 2.0;
  wide.L = 2.0;
  wide.y1 = 1.0;
  wide.D50 = 1.0;
  wide.shape = ShapeTag::square_nose;  // Ksh = 1
  CHECK(predict(EquationId::Laursen, wide) == Approx(2.437).margin(1e-3));
}

TEST_CASE("Melville narrow-pier branch", "[equations]") {
  ScourInputs in;
  in.B = 1.0;
  in.L = 1.0;
  in.y1 = 10.0;  // B/y1 = 0.1 < 0.7
  in.V1 = 2.0;
  in.Vc = 1.0;   // KI capped at 1
  in.D50 = 1.0;  // B/D50 = 1000 -> Kd = 1
  CHECK(predict(EquationId::Melville, in) == Approx(2.4));
  in.V1 = 0.0;
  CHECK(predict(EquationId::Melville, in) == 0.0);
}

TEST_CASE("CIRIA regression at the field means", "[equations]") {
  // Frozen from an independent evaluation of the transcribed factor rules:
  // Kshape 1, Kdepth 2 (y1/B = 3.22), Kvelocity = V1/Vc, Kangle power law.
  CHECK(predict(EquationId::CIRIA, field_means()) == Approx(3.68465409).epsilon(1e-8));
  CHECK(field_means().Vc.value() == Approx(2.08049162).epsilon(1e-8));
}

TEST_CASE("missing and invalid inputs", "[equations]") {
  ScourInputs in = field_means();
  in.S.reset();
  CHECK_THROWS_AS(predict(EquationId::TAMU, in), IncompleteInputsError);
  try {
    predict(EquationId::TAMU, in);
  } catch (const IncompleteInputsError& e) {
    CHECK(e.parameter() == "S");
    CHECK(e.equation() == "TAMU");
  }
  in = field_means();
  in.Vc.reset();
  CHECK_THROWS_AS(predict(EquationId::Melville, in), IncompleteInputsError);
  in = field_means();
  in.L.reset();
  CHECK_THROWS_AS(predict(EquationId::HEC18, in), IncompleteInputsError);
  in.theta = 0.0;
  CHECK_NOTHROW(predict(EquationId::HEC18, in));

  in = field_means();
  in.S = 0.0;
  CHECK_THROWS_AS(predict(EquationId::TAMU, in), DomainError);
  in = field_means();
  in.y1 = 0.0;
  CHECK_THROWS_AS(predict(EquationId::HEC18, in), DomainError);
  CHECK_THROWS_AS(predict(EquationId::Chitale, in), DomainError);
  CHECK(predict(EquationId::Laursen, in) == 0.0);
  in = field_means();
  in.theta = 95.0;
  CHECK_THROWS_AS(predict(EquationId::CIRIA, in), DomainError);
  in = field_means();
  in.shape = ShapeFactor{2.5};
  CHECK_THROWS_AS(predict(EquationId::CIRIA, in), DomainError);
}

TEST_CASE("zero flow", "[equations]") {
  for (ScourInputs in : {field_means(), lab_means()}) {
    in.V1 = 0.0;
    CHECK(predict(EquationId::HEC18, in) == 0.0);
    CHECK(predict(EquationId::Froehlich, in) == 0.0);
    CHECK(predict(EquationId::TAMU, in) == 0.0);
    CHECK(predict(EquationId::Chitale, in) == Approx(0.49 * in.y1));
    CHECK(predict(EquationId::CIRIA, in) == 0.0);
    CHECK(predict(EquationId::Melville, in) == 0.0);
    CHECK(predict(EquationId::MelvilleSutherland, in) == 0.0);
  }
}

TEST_CASE("aligned flow sets every skew factor to one", "[equations]") {
  ScourInputs in = field_means();
  in.theta = 0.0;
  const auto is_one = [](const Evaluation& e, std::string_view name) {
    for (const auto& f : e.factors) {
      if (f.name == name) return f.value == 1.0;
    }
    return false;
  };
  CHECK(is_one(evaluate(EquationId::CIRIA, in), "Kangle"));
  CHECK(is_one(evaluate(EquationId::HEC18, in), "K2"));
  CHECK(is_one(evaluate(EquationId::Melville, in), "Ktheta"));
  CHECK(is_one(evaluate(EquationId::MelvilleSutherland, in), "Ka"));
  CHECK(is_one(evaluate(EquationId::Laursen, in), "KaL"));
  for (const auto& f : evaluate(EquationId::TAMU, in).factors) {
    if (f.name == "B'") CHECK(f.value == in.B);
  }
  for (const auto& f : evaluate(EquationId::Froehlich, in).factors) {
    if (f.name == "B'") CHECK(f.value == in.B);
  }
}

TEST_CASE("linear scaling in B with factors held fixed", "[equations]") {
  for (double scale : {0.5, 2.0, 7.0}) {
    CHECK(formula::ciria(1.3 * scale, 1.1, 1.7, 0.8, 1.4) ==
          Approx(scale * formula::ciria(1.3, 1.1, 1.7, 0.8, 1.4)));
    CHECK(formula::melville_sutherland(1.3 * scale, 1.1, 1.2, 2.0, 0.9, 1.0, 1.0) ==
          Approx(scale * formula::melville_sutherland(1.3, 1.1, 1.2, 2.0, 0.9, 1.0, 1.0)));
  }
}

TEST_CASE("continuous shape replaces the shape factor", "[equations]") {
  ScourInputs in = lab_means();
  in.shape = ShapeFactor{1.5};
  const auto e = evaluate(EquationId::Froehlich, in);
  CHECK(e.factors.front().name == "phi");
  CHECK(e.factors.front().value == 1.5);
  ScourInputs base = lab_means();
  base.shape = ShapeFactor{1.0};
  CHECK(predict(EquationId::Laursen, in) == Approx(1.5 * predict(EquationId::Laursen, base)));
}

TEST_CASE("non-negative and pure over a grid of admissible inputs", "[equations]") {
  std::vector<ScourInputs> grid;
  for (double B : {0.02, 0.5, 3.0})
    for (double y1 : {0.0, 0.05, 1.0, 10.0})
      for (double V1 : {0.0, 0.3, 2.0, 4.5})
        for (double theta : {0.0, 10.0, 45.0, 85.0})
          for (double d50 : {0.05, 2.0, 100.0}) {
            ScourInputs in;
            in.B = B;
            in.L = 11.7 * B;
            in.y1 = y1;
            in.V1 = V1;
            in.Vc = 0.4;
            in.theta = theta;
            in.D50 = d50;
            in.S = 3.0;
            in.shape = ShapeTag::square_nose;
            grid.push_back(in);
          }
  std::vector<double> first;
  for (const auto& in : grid) {
    for (EquationId eq : kAllEquations) {
      if (in.y1 == 0.0 &&
          (eq == EquationId::HEC18 || eq == EquationId::Chitale || eq == EquationId::Froehlich))
        continue;
      const double ys = predict(eq, in);
      CHECK(ys >= 0.0);
      CHECK(std::isfinite(ys));
      first.push_back(ys);
    }
  }
  std::vector<double> second;
  std::thread worker([&] {
    for (const auto& in : grid)
      for (EquationId eq : kAllEquations) {
        if (in.y1 == 0.0 &&
            (eq == EquationId::HEC18 || eq == EquationId::Chitale || eq == EquationId::Froehlich))
          continue;
        second.push_back(predict(eq, in));
      }
  });
  worker.join();
  CHECK(first == second);
}

TEST_CASE("equation names", "[equations]") {
  CHECK(parse_equation("hec18") == EquationId::HEC18);
  CHECK(parse_equation("HEC-18") == EquationId::HEC18);
  CHECK(parse_equation("Melville & Sutherland") == EquationId::MelvilleSutherland);
  CHECK(parse_equation("melville-sutherland") == EquationId::MelvilleSutherland);
  CHECK_FALSE(parse_equation("lacey").has_value());
  CHECK(std::get<ShapeTag>(*parse_shape("round-nose")) == ShapeTag::round_nose);
  CHECK(std::get<ShapeFactor>(*parse_shape("1.25")).value == 1.25);
  CHECK_FALSE(parse_shape("oval").has_value());
}
