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
#include <filesystem>
#include <numeric>
#include <sstream>

#include "scourbench/dataset.hpp"
#include "scourbench/errors.hpp"
#include "scourbench/rng.hpp"

using namespace scourbench;
using Catch::Approx;

namespace {

const std::filesystem::path kData = SCOURBENCH_TEST_DATA_DIR;

std::string header() {
  std::string h = "# scourbench-schema v1\n";
  const auto cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) h += ',';
    h += cols[i];
  }
  return h + '\n';
}

PierScourRecord record(double B, double y1 = 1.0, double V1 = 1.0) {
  PierScourRecord r;
  r.id = "r";
  r.B = B;
  r.y1 = y1;
  r.V1 = V1;
  r.D50 = 1.0;
  return r;
}

}  // namespace

TEST_CASE("field fixture loads with row diagnostics", "[dataset]") {
  const auto result = load_records(kData / "field_small.csv", DataSource::field);
  REQUIRE(result.records.size() == 6);
  REQUIRE(result.errors.size() == 2);
  CHECK(result.errors[0].line == 9);
  CHECK(result.errors[0].message.find("pier_length_m") != std::string::npos);
  CHECK(result.errors[1].line == 10);
  CHECK(result.errors[1].message.find("attack_angle_deg") != std::string::npos);

  const auto& f2 = result.records[1];
  CHECK(f2.id == "F-002");
  CHECK_FALSE(f2.L.has_value());
  CHECK(f2.measurement_method == "sonar, fixed");
  CHECK(f2.B == 0.9144);
  CHECK(std::get<ShapeTag>(*f2.shape) == ShapeTag::square_nose);
  CHECK(result.records.back().measurement_method == "rod, \"probe\"");
}

TEST_CASE("lab rows are circular with zero attack angle", "[dataset]") {
  const auto result = load_records(kData / "lab_small.csv", DataSource::lab);
  REQUIRE(result.errors.empty());
  REQUIRE(result.records.size() == 3);
  for (const auto& r : result.records) {
    CHECK(r.kind == DataSource::lab);
    CHECK(*r.theta == 0.0);
    CHECK(std::get<ShapeTag>(*r.shape) == ShapeTag::cylindrical);
  }
}

TEST_CASE("schema violations are structural errors", "[dataset]") {
  SECTION("missing version line") {
    std::istringstream in("id,kind\n");
    CHECK_THROWS_AS(parse_records(in, DataSource::field), SchemaError);
  }
  SECTION("missing column") {
    std::string h = header();
    h.replace(h.find(",d50_mm"), 7, "");
    std::istringstream in(h);
    try {
      parse_records(in, DataSource::field);
      FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
      CHECK(std::string(e.what()).find("d50_mm") != std::string::npos);
    }
  }
  SECTION("unknown column") {
    std::istringstream in(header().insert(header().size() - 1, ",extra"));
    CHECK_THROWS_AS(parse_records(in, DataSource::field), SchemaError);
  }
  SECTION("kind mismatch is a row error") {
    std::istringstream in(header() + "x,lab,1,1,,1,1,,,1,,,\n");
    const auto r = parse_records(in, DataSource::field);
    CHECK(r.records.empty());
    CHECK(r.errors.size() == 1);
  }
  SECTION("missing file") {
    CHECK_THROWS_AS(load_records(kData / "nope.csv", DataSource::field), DataError);
  }
}

TEST_CASE("header-only file yields no records", "[dataset]") {
  std::istringstream in(header());
  const auto r = parse_records(in, DataSource::field);
  CHECK(r.records.empty());
  CHECK(r.errors.empty());
}

TEST_CASE("impute_length", "[dataset]") {
  auto a = impute_length(record(1.0));
  CHECK(*a.L == Approx(11.7));
  CHECK(a.flags.has(RecordFlag::L_imputed));

  auto b = record(2.0);
  b.L = 5.0;
  b = impute_length(b);
  CHECK(*b.L == 5.0);
  CHECK_FALSE(b.flags.has(RecordFlag::L_imputed));

  CHECK(*impute_length(record(1.0), 5.85).L == Approx(5.85));
  CHECK(*impute_length(record(1.0), 23.4).L == Approx(23.4));
  CHECK_THROWS_AS(impute_length(record(1.0), 0.0), ConfigError);
  CHECK_THROWS_AS(impute_length(record(1.0), -1.0), ConfigError);
}

TEST_CASE("default_spacing", "[dataset]") {
  auto a = default_spacing(record(1.0));
  CHECK(*a.S == 3.0);
  CHECK(a.flags.has(RecordFlag::S_defaulted));
  auto b = record(1.0);
  b.S = 6.5;
  b = default_spacing(b);
  CHECK(*b.S == 6.5);
  CHECK(b.flags.empty());
  auto lab = record(0.1);
  lab.kind = DataSource::lab;
  CHECK(*default_spacing(lab).S == 3.0);
}

TEST_CASE("imputation flags count the missing raw values", "[dataset]") {
  const auto raw = load_records(kData / "field_small.csv", DataSource::field).records;
  const auto missing_L = std::count_if(raw.begin(), raw.end(), [](auto& r) { return !r.L; });
  const auto missing_S = std::count_if(raw.begin(), raw.end(), [](auto& r) { return !r.S; });
  const auto done = prepare(raw);
  const auto flagged_L = std::count_if(done.begin(), done.end(), [](auto& r) {
    return r.flags.has(RecordFlag::L_imputed);
  });
  const auto flagged_S = std::count_if(done.begin(), done.end(), [](auto& r) {
    return r.flags.has(RecordFlag::S_defaulted);
  });
  CHECK(flagged_L == missing_L);
  CHECK(flagged_S == missing_S);
  for (const auto& r : done) {
    CHECK(r.L.has_value());
    CHECK(r.S.has_value());
    CHECK(r.Vc.has_value() == (r.y1 > 0.0));
  }
}

TEST_CASE("filter_invalid partitions in order", "[dataset]") {
  const auto raw = load_records(kData / "field_small.csv", DataSource::field).records;
  const auto part = filter_invalid(raw);
  CHECK(part.kept.size() + part.excluded.size() == raw.size());
  REQUIRE(part.excluded.size() == 3);
  CHECK(part.excluded[0].id == "F-003");
  CHECK(part.excluded[0].flags.has(RecordFlag::excluded_zero_y1));
  CHECK(part.excluded[0].flags.has(RecordFlag::excluded_zero_V1));
  CHECK(part.excluded[1].id == "F-004");
  CHECK(part.excluded[1].flags.has(RecordFlag::excluded_zero_V1));
  CHECK_FALSE(part.excluded[1].flags.has(RecordFlag::excluded_zero_y1));
  CHECK(part.excluded[2].id == "F-008");
  std::vector<std::string> kept_ids;
  for (const auto& r : part.kept) kept_ids.push_back(r.id);
  CHECK(kept_ids == std::vector<std::string>{"F-001", "F-002", "F-005"});

  std::vector<PierScourRecord> positive(5, record(1.0));
  CHECK(filter_invalid(positive).excluded.empty());
}

TEST_CASE("filter_invalid is a partition for random inputs", "[dataset][property]") {
  RandomStream rng(7, 0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<PierScourRecord> recs;
    const auto n = rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = record(1.0, rng.below(4) == 0 ? 0.0 : 1.0, rng.below(4) == 0 ? 0.0 : 2.0);
      r.id = std::to_string(i);
      recs.push_back(r);
    }
    const auto part = filter_invalid(recs);
    REQUIRE(part.kept.size() + part.excluded.size() == recs.size());
    std::vector<int> seen;
    for (const auto& r : part.kept) seen.push_back(std::stoi(r.id));
    for (const auto& r : part.excluded) seen.push_back(std::stoi(r.id));
    std::sort(seen.begin(), seen.end());
    std::vector<int> expect(recs.size());
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(seen == expect);
    CHECK(std::is_sorted(part.kept.begin(), part.kept.end(),
                         [](auto& a, auto& b) { return std::stoi(a.id) < std::stoi(b.id); }));
  }
}

TEST_CASE("summarize", "[dataset]") {
  SECTION("single record") {
    const std::vector<PierScourRecord> one{record(2.0)};
    const auto s = summarize(one, Parameter::B);
    CHECK(s.min == 2.0);
    CHECK(s.max == 2.0);
    CHECK(s.mean == 2.0);
    CHECK(s.sd == 0.0);
  }
  SECTION("sample and population conventions") {
    std::vector<PierScourRecord> recs{record(1.0), record(2.0), record(3.0), record(4.0)};
    CHECK(summarize(recs, Parameter::B).sd == Approx(std::sqrt(5.0 / 3.0)));
    CHECK(summarize(recs, Parameter::B, SdConvention::population).sd ==
          Approx(std::sqrt(1.25)));
  }
  SECTION("zeros and imputed values are not summarised") {
    auto recs = load_records(kData / "field_small.csv", DataSource::field).records;
    const auto y1 = summarize(recs, Parameter::y1);
    CHECK(y1.count_used == 4);
    CHECK(y1.count_used + y1.count_excluded == recs.size());
    CHECK(y1.min == 1.1);
    const auto L = summarize(prepare(recs), Parameter::L);
    CHECK(L.count_used == 3);
    CHECK(L.max == 12.0);
  }
  SECTION("empty parameter") {
    std::vector<PierScourRecord> recs{record(1.0)};
    CHECK_THROWS_AS(summarize(recs, Parameter::L), DataError);
    CHECK_THROWS_AS(summarize(std::span<const PierScourRecord>{}, Parameter::B), DataError);
    CHECK_THROWS_AS(summarize(recs, Parameter::S), ConfigError);
  }
}

TEST_CASE("summary invariants hold on random data", "[dataset][property]") {
  RandomStream rng(11, 0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PierScourRecord> recs;
    const auto n = 1 + rng.below(30);
    for (std::size_t i = 0; i < n; ++i) recs.push_back(record(0.01 + 10 * rng.uniform_open()));
    const auto s = summarize(recs, Parameter::B);
    CHECK(s.min <= s.mean);
    CHECK(s.mean <= s.max);
    CHECK(s.sd >= 0.0);
    CHECK(s.count_used + s.count_excluded == recs.size());
  }
}

TEST_CASE("serialization round-trips every field exactly", "[dataset][property]") {
  auto recs = load_records(kData / "field_small.csv", DataSource::field).records;
  RandomStream rng(3, 0);
  for (int i = 0; i < 20; ++i) {
    auto r = record(std::ldexp(rng.uniform_open(), 3), rng.uniform_open() * 7, 1.0 / 3.0);
    r.id = "rand-" + std::to_string(i);
    r.theta = 90 * rng.uniform_open();
    r.D50 = 1e-3 + rng.uniform_open();
    r.shape = ShapeFactor{0.9 + 1.1 * rng.uniform_open()};
    recs.push_back(r);
  }
  recs = prepare(recs, 5.85);

  std::ostringstream out;
  write_records(out, recs);
  std::istringstream in(out.str());
  const auto back = parse_records(in, DataSource::field);
  REQUIRE(back.errors.empty());
  REQUIRE(back.records.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& a = recs[i];
    const auto& b = back.records[i];
    CHECK(a.id == b.id);
    CHECK(a.ys_measured == b.ys_measured);
    CHECK(a.B == b.B);
    CHECK(a.L == b.L);
    CHECK(a.y1 == b.y1);
    CHECK(a.V1 == b.V1);
    CHECK(a.Vc == b.Vc);
    CHECK(a.theta == b.theta);
    CHECK(a.D50 == b.D50);
    CHECK(a.shape == b.shape);
    CHECK(a.S == b.S);
    CHECK(a.measurement_method == b.measurement_method);
    CHECK(a.flags == b.flags);
  }
}

TEST_CASE("companion lengths fill gaps before imputation", "[dataset]") {
  auto recs = load_records(kData / "field_small.csv", DataSource::field).records;
  const std::vector<CompanionRow> companion{
      {"F-002", 8.0, std::string("survey")},
      {"F-001", 99.0, std::nullopt},
      {"F-404", 1.0, std::nullopt},
  };
  CHECK(merge_companion(recs, companion) == 1);
  CHECK(*recs[1].L == 8.0);
  CHECK(*recs[1].measurement_method == "sonar, fixed");
  CHECK(*recs[0].L == 10.5);
  const auto done = prepare(recs);
  CHECK_FALSE(done[1].flags.has(RecordFlag::L_imputed));
}

TEST_CASE("flags text round-trips", "[dataset]") {
  RecordFlags f;
  CHECK(f.to_string().empty());
  f.set(RecordFlag::Vc_imputed);
  f.set(RecordFlag::L_imputed);
  CHECK(f.to_string() == "L_imputed|Vc_imputed");
  CHECK(RecordFlags::parse(f.to_string()) == f);
  CHECK_FALSE(RecordFlags::parse("bogus").has_value());
}
