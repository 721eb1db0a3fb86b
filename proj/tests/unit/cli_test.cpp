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

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "scourbench/cli.hpp"

namespace fs = std::filesystem;
using scourbench::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("scourbench_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

const std::string kField = std::string(SCOURBENCH_TEST_DATA_DIR) + "/field_small.csv";

}  // namespace

TEST_CASE("predict prints three decimals then factors", "[cli]") {
  auto r = call({"predict", "--equation", "hec18", "--B", "1", "--y1", "1", "--V1", "3.1320919526731648",
                 "--factor", "K3=1"});
  REQUIRE(r.code == 0);
  CHECK(first_line(r.out) == "2.000");
  CHECK(r.out.find("K1 = 1") != std::string::npos);

  r = call({"predict", "--equation", "chitale", "--y1", "1", "--V1", "0"});
  REQUIRE(r.code == 0);
  CHECK(first_line(r.out) == "0.490");

  r = call({"predict", "--equation", "laursen", "--B", "2", "--y1", "1", "--shape", "square-nose",
            "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "2.437\n");
}

TEST_CASE("predict usage errors", "[cli]") {
  auto r = call({"predict", "--equation", "hec18", "--B", "1", "--V1", "1"});
  CHECK(r.code == scourbench::cli::kExitUsage);
  CHECK(r.err.find("y1") != std::string::npos);

  r = call({"predict", "--equation", "bogus", "--y1", "1"});
  CHECK(r.code == scourbench::cli::kExitUsage);
  CHECK(r.err.find("bogus") != std::string::npos);

  r = call({"predict", "--equation", "laursen", "--B", "2", "--y1", "1", "--factor", "Ksh"});
  CHECK(r.code == scourbench::cli::kExitUsage);

  r = call({"predict", "--equation", "laursen", "--B", "0", "--y1", "1"});
  CHECK(r.code == scourbench::cli::kExitNumeric);

  CHECK(call({"frobnicate"}).code == scourbench::cli::kExitUsage);
  CHECK(call({}).code == scourbench::cli::kExitUsage);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("predict factor override and derived Vc", "[cli]") {
  auto r = call({"predict", "--equation", "laursen", "--B", "2", "--y1", "1", "--shape",
                 "square-nose", "--factor", "Ksh=2", "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "4.874\n");

  r = call({"predict", "--equation", "melville", "--B", "1", "--y1", "2", "--V1", "1", "--D50",
            "1"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("Vc derived") != std::string::npos);
}

TEST_CASE("ingest writes canonical data and a report", "[cli]") {
  const auto dir = scratch("ingest");
  auto r = call({"--out", dir.string(), "ingest", "--source", "field", "--input", kField});
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "field.csv"));
  CHECK(fs::exists(dir / "manifest.json"));
  const auto report = slurp(dir / "ingest_field.json");
  CHECK(report.find("\"n_row_errors\": 2") != std::string::npos);
  CHECK(r.err.find(":9:") != std::string::npos);

  // Re-ingesting the canonical output is a fixed point.
  const auto again = scratch("ingest2");
  r = call({"--out", again.string(), "ingest", "--source", "field", "--input",
            (dir / "field.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(again / "field.csv") == slurp(dir / "field.csv"));
}

TEST_CASE("ingest schema errors exit with the data code", "[cli]") {
  const auto dir = scratch("schema");
  fs::create_directories(dir);
  {
    std::ofstream bad(dir / "bad.csv");
    bad << "# scourbench-schema v1\nid,kind,ys_measured_m\nX,field,1\n";
  }
  auto r = call({"--out", (dir / "out").string(), "ingest", "--input", (dir / "bad.csv").string()});
  CHECK(r.code == scourbench::cli::kExitData);
  CHECK(r.err.find("pier_width_m") != std::string::npos);

  r = call({"--out", (dir / "out").string(), "ingest", "--input", (dir / "missing.csv").string()});
  CHECK(r.code == scourbench::cli::kExitData);
}

TEST_CASE("accuracy emits one row per equation", "[cli]") {
  const auto dir = scratch("accuracy");
  auto r = call({"--out", dir.string(), "accuracy", "--source", "field", "--input", kField,
                 "--format", "json", "--scatter"});
  REQUIRE(r.code == 0);
  std::istringstream csv(slurp(dir / "accuracy.csv"));
  std::string line;
  int field_rows = 0;
  while (std::getline(csv, line)) field_rows += line.find(",field,") != std::string::npos;
  CHECK(field_rows == 8);
  CHECK(fs::exists(dir / "accuracy.json"));
  CHECK(fs::exists(dir / "scatter_hec18_field.csv"));
}

TEST_CASE("oat writes a csv and manifest", "[cli]") {
  const auto dir = scratch("oat");
  auto r = call({"--out", dir.string(), "oat", "--source", "both", "--equation", "hec18,chitale"});
  REQUIRE(r.code == 0);
  const auto csv = slurp(dir / "oat.csv");
  CHECK(csv.rfind("equation,parameter,", 0) == 0);
  CHECK(slurp(dir / "manifest.json").find("\"command\": \"oat\"") != std::string::npos);
}

TEST_CASE("gsa requires a seed and rejects unknown equations first", "[cli]") {
  const auto dir = scratch("gsa_usage");
  CHECK(call({"--out", dir.string(), "gsa", "--equation", "hec18"}).code ==
        scourbench::cli::kExitUsage);
  CHECK(call({"--out", dir.string(), "gsa", "--seed", "1", "--equation", "hec18,nope"}).code ==
        scourbench::cli::kExitUsage);
  CHECK(!fs::exists(dir / "gsa_hec18_field.json"));
  CHECK(call({"--out", dir.string(), "gsa", "--seed", "1", "--N", "50"}).code ==
        scourbench::cli::kExitUsage);
}

TEST_CASE("gsa output is identical across runs and worker counts", "[cli]") {
  const std::vector<std::string> base{"gsa", "--equation", "hec18", "--seed", "42", "--N", "1000",
                                      "--resamples", "50", "--cdfs"};
  std::vector<std::string> paths;
  for (const std::string workers : {"1", "1", "3"}) {
    const auto dir = scratch("gsa_w" + workers + std::to_string(paths.size()));
    auto args = base;
    args.insert(args.begin(), {"--out", dir.string()});
    args.insert(args.end(), {"--workers", workers});
    REQUIRE(call(args).code == 0);
    paths.push_back(dir.string());
  }
  for (const auto* name : {"gsa_hec18_field.json", "gsa_hec18_field_cdfs.csv", "manifest.json"}) {
    const auto first = slurp(fs::path(paths[0]) / name);
    CHECK(!first.empty());
    CHECK(slurp(fs::path(paths[1]) / name) == first);
    CHECK(slurp(fs::path(paths[2]) / name) == first);
  }
}

TEST_CASE("config file supplies options", "[cli]") {
  const auto dir = scratch("config");
  fs::create_directories(dir);
  {
    std::ofstream cfg(dir / "run.toml");
    cfg << "[predict]\nequation = \"laursen\"\nB = 2\ny1 = 1\nshape = \"square-nose\"\n";
  }
  auto r = call({"--config", (dir / "run.toml").string(), "predict", "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "2.437\n");
  r = call({"--config", (dir / "run.toml").string(), "predict", "--B", "1", "--quiet"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "1.500\n");
}
