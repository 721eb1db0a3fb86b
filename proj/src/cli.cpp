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

#include "scourbench/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "scourbench/accuracy.hpp"
#include "scourbench/checksum.hpp"
#include "scourbench/dataset.hpp"
#include "scourbench/distributions.hpp"
#include "scourbench/equations.hpp"
#include "scourbench/errors.hpp"
#include "scourbench/factors.hpp"
#include "scourbench/oat.hpp"
#include "scourbench/pawn.hpp"
#include "scourbench/reference.hpp"

namespace scourbench::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr std::string_view kDataDirEnv = "SCOURBENCH_DATA_DIR";

struct Common {
  std::string out_dir = "scourbench-out";
  std::optional<std::string> factors_dir;
};

struct Manifest {
  std::string command;
  ordered_json config = ordered_json::object();
  ordered_json inputs = ordered_json::array();

  void add_input(const fs::path& path) {
    inputs.push_back({{"path", path.generic_string()}, {"sha256", sha256_file(path)}});
  }
};

std::vector<EquationId> parse_equations(const std::string& text) {
  std::vector<EquationId> out;
  if (text == "all") return {std::begin(kAllEquations), std::end(kAllEquations)};
  std::string_view rest = text;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto name = rest.substr(0, comma);
    const auto eq = parse_equation(name);
    if (!eq) throw ConfigError(fmt::format("unknown equation '{}'", name));
    out.push_back(*eq);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (out.empty()) throw ConfigError("no equation selected");
  return out;
}

DataSource parse_source_or_throw(const std::string& text) {
  const auto s = parse_source(text);
  if (!s) throw ConfigError(fmt::format("unknown source '{}' (expected lab or field)", text));
  return *s;
}

std::vector<DataSource> parse_sources(const std::string& text) {
  if (text == "both") return {DataSource::lab, DataSource::field};
  return {parse_source_or_throw(text)};
}

fs::path resolve_input(const std::optional<std::string>& input,
                       const std::optional<std::string>& data_dir, DataSource source) {
  if (input) return *input;
  std::optional<fs::path> dir;
  if (data_dir) {
    dir = *data_dir;
  } else if (const char* env = std::getenv(kDataDirEnv.data()); env && *env) {
    dir = env;
  }
  if (!dir) {
    throw ConfigError(fmt::format("no input for {} data: pass --input or --data, or set {}",
                                  source_name(source), kDataDirEnv));
  }
  return *dir / fmt::format("{}.csv", source_name(source));
}

FactorSet load_factors(const Common& common, Manifest& manifest) {
  if (!common.factors_dir) {
    manifest.config["factors"] = "builtin";
    return FactorSet::builtin();
  }
  const fs::path dir = *common.factors_dir;
  manifest.config["factors"] = dir.generic_string();
  for (const auto eq : kAllEquations) manifest.add_input(dir / factor_file_name(eq));
  return FactorSet::load_directory(dir);
}

fs::path prepare_out_dir(const Common& common) {
  const fs::path dir = common.out_dir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
  return dir;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  return out;
}

void write_manifest(const fs::path& dir, const Manifest& m) {
  ordered_json j;
  j["tool"] = "scourbench";
  j["version"] = version();
  j["command"] = m.command;
  j["config"] = m.config;
  j["inputs"] = m.inputs;
  open_output(dir / "manifest.json") << j.dump(2) << '\n';
}

// Loads records, reporting malformed rows on stderr.
std::vector<PierScourRecord> load_dataset(const fs::path& path, DataSource source,
                                          std::ostream& err, Manifest& manifest) {
  auto result = load_records(path, source);
  manifest.add_input(path);
  for (const auto& e : result.errors) {
    err << fmt::format("warning: {}:{}: {}\n", path.string(), e.line, e.message);
  }
  if (!result.errors.empty()) {
    err << fmt::format("warning: {} malformed row(s) skipped in {}\n", result.errors.size(),
                       path.string());
  }
  return std::move(result.records);
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string source = "field";
  std::optional<std::string> input;
  std::optional<std::string> data_dir;
  std::optional<std::string> companion;
  double length_ratio = kDefaultLengthRatio;
};

int cmd_ingest(const IngestArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  Manifest manifest{"ingest"};
  const auto source = parse_source_or_throw(a.source);
  const auto path = resolve_input(a.input, a.data_dir, source);
  manifest.config["source"] = a.source;
  manifest.config["length_ratio"] = a.length_ratio;

  auto loaded = load_records(path, source);
  manifest.add_input(path);
  std::size_t recovered = 0;
  if (a.companion) {
    const auto companion = load_companion(*a.companion);
    manifest.add_input(*a.companion);
    recovered = merge_companion(loaded.records, companion);
  }
  const std::size_t raw_missing_L = static_cast<std::size_t>(std::count_if(
      loaded.records.begin(), loaded.records.end(), [](const auto& r) { return !r.L; }));
  const auto records = prepare(std::move(loaded.records), a.length_ratio);

  const auto dir = prepare_out_dir(common);
  {
    auto file = open_output(dir / fmt::format("{}.csv", source_name(source)));
    write_records(file, records);
  }

  auto count_flag = [&](RecordFlag f) {
    return std::count_if(records.begin(), records.end(),
                         [f](const auto& r) { return r.flags.has(f); });
  };
  const auto zero_y1 =
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.y1 == 0.0; });
  const auto zero_V1 =
      std::count_if(records.begin(), records.end(), [](const auto& r) { return r.V1 == 0.0; });

  ordered_json report;
  report["source"] = source_name(source);
  report["input"] = path.generic_string();
  report["n_records"] = records.size();
  report["n_row_errors"] = loaded.errors.size();
  report["row_errors"] = ordered_json::array();
  for (const auto& e : loaded.errors) {
    report["row_errors"].push_back({{"line", e.line}, {"message", e.message}});
  }
  report["missing_L_raw"] = raw_missing_L;
  report["L_from_companion"] = recovered;
  report["L_imputed"] = count_flag(RecordFlag::L_imputed);
  report["S_defaulted"] = count_flag(RecordFlag::S_defaulted);
  report["Vc_imputed"] = count_flag(RecordFlag::Vc_imputed);
  report["zero_y1"] = zero_y1;
  report["zero_V1"] = zero_V1;
  report["summary"] = ordered_json::array();
  for (const auto p : kAllParameters) {
    if (p == Parameter::Sh || p == Parameter::S) continue;
    try {
      const auto s = summarize(records, p);
      report["summary"].push_back({{"parameter", parameter_name(p)},
                                   {"min", s.min},
                                   {"max", s.max},
                                   {"mean", s.mean},
                                   {"sd", s.sd},
                                   {"count_used", s.count_used},
                                   {"count_excluded", s.count_excluded}});
    } catch (const DataError&) {
      // Parameter not measured in this dataset.
    }
  }
  open_output(dir / fmt::format("ingest_{}.json", source_name(source))) << report.dump(2) << '\n';
  write_manifest(dir, manifest);

  for (const auto& e : loaded.errors) {
    err << fmt::format("warning: {}:{}: {}\n", path.string(), e.line, e.message);
  }
  out << fmt::format("{} records ({} rejected rows) -> {}\n", records.size(),
                     loaded.errors.size(), (dir / fmt::format("{}.csv", source_name(source))).string());
  return kExitOk;
}

// ---------------------------------------------------------------- predict

struct PredictArgs {
  std::string equation;
  std::optional<double> B, L, y1, V1, Vc, theta, D50, S;
  std::optional<std::string> shape;
  std::vector<std::string> factor_overrides;
  bool quiet = false;
  bool write_manifest = false;
};

FactorOverrides parse_overrides(const std::vector<std::string>& items) {
  FactorOverrides out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ConfigError(fmt::format("--factor expects NAME=VALUE, got '{}'", item));
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing text");
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("--factor {}: value is not a number", item));
    }
    out[item.substr(0, eq)] = value;
  }
  return out;
}

int cmd_predict(const PredictArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  const auto eqs = parse_equations(a.equation);
  if (eqs.size() != 1) throw ConfigError("predict takes exactly one equation");
  const auto eq = eqs.front();
  Manifest manifest{"predict"};
  const auto factors = load_factors(common, manifest);
  const auto used = parameters_used(eq);
  auto needs = [&](Parameter p) { return std::find(used.begin(), used.end(), p) != used.end(); };
  auto required = [&](const std::optional<double>& v, Parameter p) -> double {
    if (v) return *v;
    if (needs(p)) throw IncompleteInputsError(std::string(parameter_name(p)),
                                              std::string(display_name(eq)));
    return 1.0;  // placeholder for an input this equation never reads
  };

  ScourInputs in;
  in.B = required(a.B, Parameter::B);
  in.y1 = required(a.y1, Parameter::y1);
  in.V1 = required(a.V1, Parameter::V1);
  in.D50 = a.D50.value_or(1.0);
  if (needs(Parameter::D50) && !a.D50) {
    throw IncompleteInputsError("D50", std::string(display_name(eq)));
  }
  in.L = a.L;
  in.theta = a.theta.value_or(0.0);
  in.S = a.S;
  in.Vc = a.Vc;
  if (needs(Parameter::Vc) && !in.Vc && a.D50) {
    in.Vc = critical_velocity(in.y1, *a.D50, factors);
    err << fmt::format("note: Vc derived from y1 and D50: {:.4g} m/s\n", *in.Vc);
  }
  if (a.shape) {
    const auto shape = parse_shape(*a.shape);
    if (!shape) throw ConfigError(fmt::format("unknown pier shape '{}'", *a.shape));
    in.shape = *shape;
  }
  const auto overrides = parse_overrides(a.factor_overrides);
  const auto result = evaluate(eq, in, factors, overrides);

  out << format_depth(result.ys) << '\n';
  if (!a.quiet) {
    for (const auto& f : result.factors) out << fmt::format("  {} = {:.4g}\n", f.name, f.value);
  }
  if (a.write_manifest) {
    manifest.config["equation"] = token(eq);
    ordered_json inputs;
    auto put = [&](std::string_view name, const std::optional<double>& v) {
      if (v) inputs[std::string(name)] = *v;
    };
    put("B", a.B), put("L", a.L), put("y1", a.y1), put("V1", a.V1), put("Vc", a.Vc);
    put("theta", a.theta), put("D50", a.D50), put("S", a.S);
    if (a.shape) inputs["shape"] = *a.shape;
    manifest.config["inputs"] = inputs;
    manifest.config["factor_overrides"] = overrides;
    write_manifest(prepare_out_dir(common), manifest);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- accuracy

struct AccuracyArgs {
  std::string source = "both";
  std::string equation = "all";
  std::optional<std::string> input;
  std::optional<std::string> data_dir;
  std::optional<std::string> companion;
  double length_ratio = kDefaultLengthRatio;
  std::string format = "csv";
  bool tolerance = false;
  bool scatter = false;
};

int cmd_accuracy(const AccuracyArgs& a, const Common& common, std::ostream& out,
                 std::ostream& err) {
  const auto eqs = parse_equations(a.equation);
  const auto sources = parse_sources(a.source);
  if (a.input && sources.size() != 1) {
    throw ConfigError("--input needs a single --source (lab or field)");
  }
  if (a.format != "csv" && a.format != "json" && a.format != "svg") {
    throw ConfigError(fmt::format("unknown format '{}'", a.format));
  }
  Manifest manifest{"accuracy"};
  manifest.config["source"] = a.source;
  manifest.config["equation"] = a.equation;
  manifest.config["length_ratio"] = a.length_ratio;
  manifest.config["format"] = a.format;
  manifest.config["tolerance_column"] = a.tolerance;
  manifest.config["scatter"] = a.scatter;
  const auto factors = load_factors(common, manifest);

  std::vector<AccuracyReport> reports;
  const auto dir = prepare_out_dir(common);
  for (const auto source : sources) {
    auto records = load_dataset(resolve_input(a.input, a.data_dir, source), source, err, manifest);
    if (a.companion) {
      merge_companion(records, load_companion(*a.companion));
      manifest.add_input(*a.companion);
    }
    records = prepare(std::move(records), a.length_ratio);
    const std::vector<Subset> subsets = source == DataSource::lab
                                            ? std::vector<Subset>{Subset::lab}
                                            : std::vector<Subset>{Subset::field, Subset::le2m};
    for (const auto subset : subsets) {
      for (const auto eq : eqs) {
        AccuracyOptions options;
        options.tolerance_column = a.tolerance;
        options.factors = &factors;
        reports.push_back(accuracy_report(records, eq, subset, options));
        if (a.scatter || a.format == "svg") {
          const auto rows = scatter_export(records, eq, subset, &factors);
          const auto stem = fmt::format("scatter_{}_{}", token(eq), subset_name(subset));
          if (a.scatter) {
            auto file = open_output(dir / (stem + ".csv"));
            write_scatter_csv(file, rows);
          }
          if (a.format == "svg") {
            auto file = open_output(dir / (stem + ".svg"));
            write_scatter_svg(file, rows,
                              fmt::format("{} ({})", display_name(eq), subset_name(subset)));
          }
        }
      }
    }
  }
  {
    auto file = open_output(dir / "accuracy.csv");
    write_accuracy_csv(file, reports);
  }
  if (a.format == "json") {
    auto file = open_output(dir / "accuracy.json");
    write_accuracy_json(file, reports);
  }
  write_manifest(dir, manifest);

  out << fmt::format("{:<24} {:>6} {:>5} {:>7} {:>7} {:>7} {:>7}\n", "equation", "subset", "n",
                     "under%", "over%", "pm50%", "f1.5%");
  for (const auto& r : reports) {
    out << fmt::format("{:<24} {:>6} {:>5} {:>7.4g} {:>7.4g} {:>7.4g} {:>7.4g}\n",
                       display_name(r.equation), subset_name(r.subset), r.n_evaluated,
                       r.percent(r.n_under), r.percent(r.n_over), r.percent(r.n_within_pm50),
                       r.percent(r.n_within_factor15));
  }
  return kExitOk;
}

// ---------------------------------------------------------------- fit

struct FitArgs {
  std::string source = "field";
  std::optional<std::string> input;
  std::optional<std::string> data_dir;
  std::string format = "csv";
};

int cmd_fit(const FitArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  const auto source = parse_source_or_throw(a.source);
  Manifest manifest{"fit"};
  manifest.config["source"] = a.source;
  manifest.config["format"] = a.format;
  const FitOptions options;
  manifest.config["fit"] = {{"restarts", options.restarts},
                            {"tolerance", options.tolerance},
                            {"max_iterations", options.max_iterations},
                            {"seed", options.seed}};
  const auto records = load_dataset(resolve_input(a.input, a.data_dir, source), source, err,
                                    manifest);

  ordered_json rows = ordered_json::array();
  std::ostringstream csv_text;
  csv_text << "parameter,family,k,loglik,aic,parameters,selected,published_family,error\n";
  for (const auto& row : published_rows(source)) {
    if (!row.stats) continue;
    std::vector<double> values;
    for (const auto& rec : records) {
      const auto v = measured_value(rec, row.parameter);
      if (!v) continue;
      if ((row.parameter == Parameter::y1 || row.parameter == Parameter::V1) && *v == 0.0) continue;
      values.push_back(*v);
    }
    const auto name = std::string(parameter_name(row.parameter));
    if (values.empty()) {
      err << fmt::format("warning: no measured {} values; skipped\n", name);
      continue;
    }
    const auto candidates = fit_candidates(values, kAllFamilies, options);
    std::optional<std::size_t> best;
    try {
      best = best_candidate(candidates);
    } catch (const FitError&) {
    }
    ordered_json j;
    j["parameter"] = name;
    j["n"] = values.size();
    j["published_family"] = family_name(row.family);
    j["candidates"] = ordered_json::array();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const auto& c = candidates[i];
      ordered_json cj;
      cj["family"] = family_name(c.family);
      std::string params;
      if (c.fit) {
        const auto names = Distribution::parameter_names(c.family);
        const auto vals = c.fit->distribution.parameters();
        ordered_json pj;
        for (std::size_t k = 0; k < vals.size(); ++k) {
          pj[std::string(names[k])] = vals[k];
          params += fmt::format("{}{}={}", k ? ";" : "", names[k], vals[k]);
        }
        cj["k"] = c.fit->k_params;
        cj["loglik"] = c.fit->loglik;
        cj["aic"] = c.fit->aic;
        cj["parameters"] = pj;
      } else {
        cj["error"] = c.error;
      }
      cj["selected"] = best && *best == i;
      j["candidates"].push_back(cj);
      csv_text << name << ',' << family_name(c.family) << ','
               << (c.fit ? std::to_string(c.fit->k_params) : "") << ','
               << (c.fit ? fmt::format("{}", c.fit->loglik) : "") << ','
               << (c.fit ? fmt::format("{}", c.fit->aic) : "") << ',' << params << ','
               << (best && *best == i ? "true" : "false") << ',' << family_name(row.family)
               << ",\"" << c.error << "\"\n";
    }
    if (best) {
      j["selected"] = family_name(candidates[*best].family);
      out << fmt::format("{:<6} {:<8} (published {})  {}\n", name,
                         family_name(candidates[*best].family), family_name(row.family),
                         candidates[*best].fit->distribution.describe());
    }
    rows.push_back(j);
  }
  const auto dir = prepare_out_dir(common);
  open_output(dir / fmt::format("fit_{}.csv", source_name(source))) << csv_text.str();
  if (a.format == "json") {
    open_output(dir / fmt::format("fit_{}.json", source_name(source))) << rows.dump(2) << '\n';
  }
  write_manifest(dir, manifest);
  return kExitOk;
}

// ---------------------------------------------------------------- oat

struct OatArgs {
  std::string source = "field";
  std::string equation = "all";
  double length_ratio = kDefaultLengthRatio;
  bool zero_theta = false;
};

int cmd_oat(const OatArgs& a, const Common& common, std::ostream& out, std::ostream&) {
  const auto eqs = parse_equations(a.equation);
  const auto sources = parse_sources(a.source);
  Manifest manifest{"oat"};
  manifest.config["source"] = a.source;
  manifest.config["equation"] = a.equation;
  manifest.config["length_ratio"] = a.length_ratio;
  manifest.config["zero_theta_baseline"] = a.zero_theta;
  std::vector<OatResult> results;
  for (const auto source : sources) {
    const auto plan = make_oat_plan(source, {a.length_ratio, a.zero_theta});
    for (const auto eq : eqs) results.push_back(run_oat(eq, plan));
  }
  const auto dir = prepare_out_dir(common);
  {
    auto file = open_output(dir / "oat.csv");
    write_oat_csv(file, results);
  }
  write_manifest(dir, manifest);
  for (const auto& r : results) {
    out << fmt::format("{} ({}):", display_name(r.equation), source_name(r.source));
    auto entries = r.entries;
    std::sort(entries.begin(), entries.end(), [](auto& x, auto& y) { return x.rank < y.rank; });
    for (const auto& e : entries) out << fmt::format(" {}={:.4g}", parameter_name(e.parameter), e.t_delta);
    out << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- gsa

struct GsaArgs {
  std::string source = "field";
  std::string equation = "all";
  std::optional<std::uint64_t> seed;
  std::size_t N = 5000;
  std::size_t intervals = 10;
  std::size_t resamples = 1000;
  double length_ratio = kDefaultLengthRatio;
  unsigned workers = 0;
  bool fitted = false;
  bool cdfs = false;
  bool no_dummy_column = false;
  std::optional<std::string> input;
  std::optional<std::string> data_dir;
};

int cmd_gsa(const GsaArgs& a, const Common& common, std::ostream& out, std::ostream& err) {
  const auto eqs = parse_equations(a.equation);
  const auto source = parse_source_or_throw(a.source);
  if (!a.seed) throw ConfigError("gsa requires --seed");
  GsaConfig config;
  config.N = a.N;
  config.n_intervals = a.intervals;
  config.bootstrap_resamples = a.resamples;
  config.seed = *a.seed;
  config.length_ratio = a.length_ratio;
  config.workers = a.workers ? a.workers : default_workers();
  config.dummy_column = !a.no_dummy_column;
  validate(config);

  Manifest manifest{"gsa"};
  manifest.config["source"] = a.source;
  manifest.config["equation"] = a.equation;
  manifest.config["seed"] = config.seed;
  manifest.config["N"] = config.N;
  manifest.config["n_intervals"] = config.n_intervals;
  manifest.config["bootstrap_resamples"] = config.bootstrap_resamples;
  manifest.config["ci_level"] = config.ci_level;
  manifest.config["dummy_quantile"] = config.dummy_quantile;
  manifest.config["dummy_column"] = config.dummy_column;
  manifest.config["length_ratio"] = config.length_ratio;
  manifest.config["marginals"] = a.fitted ? "fitted" : "published";

  std::vector<Marginal> marginals;
  if (a.fitted) {
    const auto records = load_dataset(resolve_input(a.input, a.data_dir, source), source, err,
                                      manifest);
    marginals = fitted_marginals(records, source);
  } else {
    marginals = published_marginals(source);
  }
  ordered_json described = ordered_json::array();
  for (const auto& m : marginals) {
    described.push_back({{"param", m.name},
                         {"distribution", m.distribution.describe()},
                         {"lower", m.lower},
                         {"upper", std::isfinite(m.upper) ? ordered_json(m.upper) : ordered_json("inf")}});
  }
  manifest.config["marginal_definitions"] = described;

  const auto dir = prepare_out_dir(common);
  for (const auto eq : eqs) {
    auto chosen = gsa_marginals(eq, source, marginals);
    if (config.dummy_column) chosen.push_back(dummy_marginal());
    const auto sample = sample_equation(eq, source, chosen, config);
    const auto report = analyse(eq, source, sample, chosen, config);
    const auto stem = fmt::format("gsa_{}_{}", token(eq), source_name(source));
    {
      auto file = open_output(dir / (stem + ".json"));
      write_gsa_json(file, report);
    }
    if (a.cdfs) {
      auto file = open_output(dir / (stem + "_cdfs.csv"));
      write_conditional_cdfs(file, sample, config.n_intervals);
    }
    out << fmt::format("{} ({}), dummy mean {:.4g}, q95 {:.4g}\n", display_name(eq),
                       source_name(source), report.dummy.mean, report.dummy.q95);
    for (const auto& idx : report.indices) {
      out << fmt::format("  {:<6} S={:.4g} [{:.4g}, {:.4g}]{}\n", idx.name, idx.S, idx.ci_lo,
                         idx.ci_hi, idx.significant ? " *" : "");
    }
  }
  write_manifest(dir, manifest);
  return kExitOk;
}

}  // namespace

std::string_view version() noexcept { return SCOURBENCH_VERSION; }

std::string format_depth(double ys) { return fmt::format("{:.3f}", ys); }

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bridge pier scour equations: accuracy, OAT and PAWN sensitivity."};
  app.name("scourbench");
  app.set_version_flag("--version", std::string(version()));
  app.set_config("--config", "", "TOML file with option values (flags take precedence)");
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--out", common.out_dir, "Output directory")->capture_default_str();
  app.add_option("--factors", common.factors_dir,
                 "Directory of .factors tables (default: built-in tables)");

  IngestArgs ingest;
  auto* s_ingest = app.add_subcommand("ingest", "Validate a CSV export and write the canonical dataset");
  s_ingest->add_option("--source", ingest.source, "lab or field")->capture_default_str();
  s_ingest->add_option("--input", ingest.input, "Raw CSV export");
  s_ingest->add_option("--data", ingest.data_dir, "Directory holding <source>.csv");
  s_ingest->add_option("--companion", ingest.companion, "Per-pier length table");
  s_ingest->add_option("--length-ratio", ingest.length_ratio, "L = ratio * B for missing L")
      ->capture_default_str();

  PredictArgs predict_args;
  auto* s_predict = app.add_subcommand("predict", "Evaluate one equation");
  s_predict->add_option("--equation", predict_args.equation, "Equation name")->required();
  s_predict->add_option("--B", predict_args.B, "Pier width (m)");
  s_predict->add_option("--L", predict_args.L, "Pier length (m)");
  s_predict->add_option("--y1", predict_args.y1, "Approach flow depth (m)");
  s_predict->add_option("--V1", predict_args.V1, "Approach velocity (m/s)");
  s_predict->add_option("--Vc", predict_args.Vc, "Critical velocity (m/s)");
  s_predict->add_option("--theta", predict_args.theta, "Attack angle (degrees)");
  s_predict->add_option("--D50", predict_args.D50, "Median grain size (mm)");
  s_predict->add_option("--S", predict_args.S, "Pier spacing (m)");
  s_predict->add_option("--shape", predict_args.shape,
                        "cylindrical, round-nose, square-nose, sharp-nose, group or a factor");
  s_predict->add_option("--factor", predict_args.factor_overrides, "Override a factor: NAME=VALUE");
  s_predict->add_flag("--quiet", predict_args.quiet, "Print only the depth");
  s_predict->add_flag("--manifest", predict_args.write_manifest, "Write manifest.json to --out");

  AccuracyArgs accuracy;
  auto* s_accuracy = app.add_subcommand("accuracy", "Score equations against measured scour");
  s_accuracy->add_option("--source", accuracy.source, "lab, field or both")->capture_default_str();
  s_accuracy->add_option("--equation", accuracy.equation, "Name, comma list or all")
      ->capture_default_str();
  s_accuracy->add_option("--input", accuracy.input, "Dataset CSV (single source)");
  s_accuracy->add_option("--data", accuracy.data_dir, "Directory holding <source>.csv");
  s_accuracy->add_option("--companion", accuracy.companion, "Per-pier length table");
  s_accuracy->add_option("--length-ratio", accuracy.length_ratio, "L = ratio * B for missing L")
      ->capture_default_str();
  s_accuracy->add_option("--format", accuracy.format, "csv, json or svg")->capture_default_str();
  s_accuracy->add_flag("--tolerance", accuracy.tolerance, "Add +/-10% measured-value columns");
  s_accuracy->add_flag("--scatter", accuracy.scatter, "Write per-equation scatter CSVs");

  FitArgs fit;
  auto* s_fit = app.add_subcommand("fit", "Fit candidate marginals by maximum likelihood");
  s_fit->add_option("--source", fit.source, "lab or field")->capture_default_str();
  s_fit->add_option("--input", fit.input, "Dataset CSV");
  s_fit->add_option("--data", fit.data_dir, "Directory holding <source>.csv");
  s_fit->add_option("--format", fit.format, "csv or json")->capture_default_str();

  OatArgs oat;
  auto* s_oat = app.add_subcommand("oat", "One-at-a-time sensitivity");
  s_oat->add_option("--source", oat.source, "lab, field or both")->capture_default_str();
  s_oat->add_option("--equation", oat.equation, "Name, comma list or all")->capture_default_str();
  s_oat->add_option("--length-ratio", oat.length_ratio, "Lab L = ratio * B")->capture_default_str();
  s_oat->add_flag("--zero-theta-baseline", oat.zero_theta, "Baseline attack angle 0");

  GsaArgs gsa;
  auto* s_gsa = app.add_subcommand("gsa", "PAWN global sensitivity");
  s_gsa->add_option("--source", gsa.source, "lab or field")->capture_default_str();
  s_gsa->add_option("--equation", gsa.equation, "Name, comma list or all")->capture_default_str();
  s_gsa->add_option("--seed", gsa.seed, "Random seed (required)");
  s_gsa->add_option("--N", gsa.N, "Sample size")->capture_default_str();
  s_gsa->add_option("--intervals", gsa.intervals, "Conditioning intervals")->capture_default_str();
  s_gsa->add_option("--resamples", gsa.resamples, "Bootstrap resamples")->capture_default_str();
  s_gsa->add_option("--length-ratio", gsa.length_ratio, "L = ratio * B when L is not sampled")
      ->capture_default_str();
  s_gsa->add_option("--workers", gsa.workers, "Threads (default: all cores)");
  s_gsa->add_flag("--fitted", gsa.fitted, "Use marginals fitted to the dataset");
  s_gsa->add_flag("--cdfs", gsa.cdfs, "Write conditional CDF curves");
  s_gsa->add_flag("--no-dummy-column", gsa.no_dummy_column, "Do not sample a dummy input");
  s_gsa->add_option("--input", gsa.input, "Dataset CSV for --fitted");
  s_gsa->add_option("--data", gsa.data_dir, "Directory holding <source>.csv");

  std::vector<const char*> argv{"scourbench"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const bool predicting = s_predict->parsed();
  try {
    if (s_ingest->parsed()) return cmd_ingest(ingest, common, out, err);
    if (predicting) return cmd_predict(predict_args, common, out, err);
    if (s_accuracy->parsed()) return cmd_accuracy(accuracy, common, out, err);
    if (s_fit->parsed()) return cmd_fit(fit, common, out, err);
    if (s_oat->parsed()) return cmd_oat(oat, common, out, err);
    if (s_gsa->parsed()) return cmd_gsa(gsa, common, out, err);
  } catch (const IncompleteInputsError& e) {
    err << "error: " << e.what() << '\n';
    return predicting ? kExitUsage : kExitData;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

}  // namespace scourbench::cli
