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

#include "scourbench/pawn.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "csv.hpp"
#include "scourbench/equations.hpp"
#include "scourbench/errors.hpp"
#include "scourbench/reference.hpp"
#include "scourbench/rng.hpp"

namespace scourbench {
namespace {

constexpr std::uint64_t kLhsStream = 0x1000;
constexpr std::uint64_t kBootstrapStream = 0x100000;
constexpr std::size_t kMinBinSize = 5;
constexpr double kPositiveFloor = 1e-9;

// Runs body(i) for i in [0, n) on up to `workers` threads. The first
// exception is rethrown on the caller's thread.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// KS distance between two sorted samples from integer step counts, so the
// result depends only on the ordering of the values.
double ks_sorted(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::size_t i = 0;
  std::size_t j = 0;
  std::uint64_t best = 0;
  while (i < n || j < m) {
    const double v = (j >= m || (i < n && a[i] <= b[j])) ? a[i] : b[j];
    while (i < n && a[i] <= v) ++i;
    while (j < m && b[j] <= v) ++j;
    const std::uint64_t lhs = static_cast<std::uint64_t>(i) * m;
    const std::uint64_t rhs = static_cast<std::uint64_t>(j) * n;
    best = std::max(best, lhs > rhs ? lhs - rhs : rhs - lhs);
  }
  return static_cast<double>(best) / (static_cast<double>(n) * static_cast<double>(m));
}

// Type-7 quantile of an unsorted sample.
double sample_quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::vector<std::uint32_t> order_by(std::span<const double> values) {
  std::vector<std::uint32_t> order(values.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return values[a] < values[b]; });
  return order;
}

// Row orderings shared by the point estimate and every replicate.
class PawnEngine {
 public:
  PawnEngine(std::span<const std::vector<double>> X, std::span<const double> Y,
             std::size_t n_intervals)
      : Y_(Y), n_intervals_(n_intervals), y_order_(order_by(Y)) {
    for (const auto& column : X) {
      if (column.size() != Y.size()) {
        throw DomainError(fmt::format("sample has {} outputs but a column of {} rows", Y.size(),
                                      column.size()));
      }
      x_order_.push_back(order_by(column));
    }
    sizes_ = bin_sizes(Y.size(), n_intervals);
    if (sizes_.back() < kMinBinSize) {
      throw SparseBinError(fmt::format(
          "sparse bin: {} samples in {} intervals leaves {} per bin (need >= {}); increase N",
          Y.size(), n_intervals, sizes_.back(), kMinBinSize));
    }
  }

  std::size_t rows() const noexcept { return Y_.size(); }

  // Sorted outputs of a replicate given per-row multiplicities.
  std::vector<double> sorted_outputs(std::span<const std::uint32_t> mult) const {
    std::vector<double> out;
    out.reserve(Y_.size());
    for (const auto r : y_order_) out.insert(out.end(), mult[r], Y_[r]);
    return out;
  }

  double index(std::size_t column, std::span<const std::uint32_t> mult,
               std::span<const double> unconditional) const {
    double total = 0.0;
    std::size_t bin = 0;
    std::vector<double> values;
    values.reserve(sizes_.front());
    auto close_bin = [&] {
      std::sort(values.begin(), values.end());
      total += ks_sorted(unconditional, values);
      values.clear();
      ++bin;
    };
    for (const auto r : x_order_[column]) {
      for (std::uint32_t k = 0; k < mult[r]; ++k) {
        values.push_back(Y_[r]);
        if (values.size() == sizes_[bin]) close_bin();
      }
    }
    return total / static_cast<double>(n_intervals_);
  }

  std::size_t columns() const noexcept { return x_order_.size(); }
  std::size_t n_intervals() const noexcept { return n_intervals_; }

 private:
  std::span<const double> Y_;
  std::size_t n_intervals_;
  std::vector<std::uint32_t> y_order_;
  std::vector<std::vector<std::uint32_t>> x_order_;
  std::vector<std::size_t> sizes_;
};

double dummy_replicate(std::span<const double> unconditional, std::size_t n_intervals,
                       RandomStream& rng) {
  const std::size_t N = unconditional.size();
  const std::size_t m = N / n_intervals;
  std::vector<std::uint32_t> idx(N);
  std::iota(idx.begin(), idx.end(), 0u);
  std::vector<double> sub(m);
  double total = 0.0;
  for (std::size_t k = 0; k < n_intervals; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(N - i));
      std::swap(idx[i], idx[j]);
      sub[i] = unconditional[idx[i]];
    }
    std::sort(sub.begin(), sub.end());
    total += ks_sorted(unconditional, sub);
  }
  return total / static_cast<double>(n_intervals);
}

void set_coordinate(ScourInputs& in, Parameter p, double value) {
  switch (p) {
    case Parameter::B: in.B = value; return;
    case Parameter::L: in.L = value; return;
    case Parameter::y1: in.y1 = value; return;
    case Parameter::V1: in.V1 = value; return;
    case Parameter::Vc: in.Vc = value; return;
    case Parameter::theta: in.theta = value; return;
    case Parameter::D50: in.D50 = value; return;
    case Parameter::Sh: in.shape = ShapeFactor{value}; return;
    case Parameter::S: in.S = value; return;
  }
}

const Marginal* find_marginal(std::span<const Marginal> marginals, Parameter p) {
  for (const auto& m : marginals) {
    if (m.parameter == p) return &m;
  }
  return nullptr;
}

bool contains(std::span<const Parameter> ps, Parameter p) {
  return std::find(ps.begin(), ps.end(), p) != ps.end();
}

}  // namespace

std::pair<double, double> physical_bounds(Parameter p) {
  switch (p) {
    case Parameter::theta:
      return {0.0, 90.0};
    case Parameter::Sh:
      return {kShapeFactorMin, kShapeFactorMax};
    default:
      return {kPositiveFloor, std::numeric_limits<double>::infinity()};
  }
}

std::vector<Marginal> published_marginals(DataSource source) {
  std::vector<Marginal> out;
  for (const auto& row : published_rows(source)) {
    const auto [lo, hi] = physical_bounds(row.parameter);
    out.push_back({std::string(parameter_name(row.parameter)), row.parameter,
                   published_marginal(source, row.parameter), lo, hi});
  }
  return out;
}

std::vector<Marginal> fitted_marginals(std::span<const PierScourRecord> records,
                                       DataSource source, const FitOptions& options) {
  std::vector<Marginal> out;
  for (auto m : published_marginals(source)) {
    const auto* row = find_published_row(source, *m.parameter);
    if (row->stats) {
      std::vector<double> values;
      for (const auto& rec : records) {
        const auto v = measured_value(rec, *m.parameter);
        if (!v) continue;
        if ((*m.parameter == Parameter::y1 || *m.parameter == Parameter::V1) && *v == 0.0) {
          continue;
        }
        values.push_back(*v);
      }
      if (values.empty()) {
        throw DataError(fmt::format("no measured {} values to fit", m.name));
      }
      m.distribution = select_best(values, kAllFamilies, options).distribution;
    }
    out.push_back(std::move(m));
  }
  return out;
}

Marginal dummy_marginal() {
  return {"dummy", std::nullopt, Distribution(Uniform{0.0, 1.0}), 0.0, 1.0};
}

void validate(const GsaConfig& c) {
  if (c.n_intervals < 2) throw ConfigError("n_intervals must be >= 2");
  if (c.N < 10 * c.n_intervals) {
    throw ConfigError(fmt::format("N must be >= 10 * n_intervals ({}), got {}",
                                  10 * c.n_intervals, c.N));
  }
  if (c.N > std::numeric_limits<std::uint32_t>::max()) throw ConfigError("N is too large");
  if (c.bootstrap_resamples < 1) throw ConfigError("bootstrap_resamples must be >= 1");
  if (!(c.ci_level > 0.0 && c.ci_level < 1.0)) throw ConfigError("ci_level must be in (0, 1)");
  if (!(c.dummy_quantile > 0.0 && c.dummy_quantile < 1.0)) {
    throw ConfigError("dummy_quantile must be in (0, 1)");
  }
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  if (!(c.length_ratio > 0.0)) throw ConfigError("length ratio must be > 0");
}

std::vector<std::vector<double>> latin_hypercube(std::span<const Marginal> marginals,
                                                 std::size_t N, std::uint64_t seed) {
  std::vector<std::vector<double>> X;
  X.reserve(marginals.size());
  const double p_min = std::numeric_limits<double>::min();
  const double p_max = std::nextafter(1.0, 0.0);
  for (std::size_t j = 0; j < marginals.size(); ++j) {
    const auto& m = marginals[j];
    const double f_lo = std::isfinite(m.lower) ? m.distribution.cdf(m.lower) : 0.0;
    const double f_hi = std::isfinite(m.upper) ? m.distribution.cdf(m.upper) : 1.0;
    if (!(f_hi > f_lo)) {
      throw DomainError(fmt::format("marginal {} has no mass in [{}, {}]", m.name, m.lower,
                                    m.upper));
    }
    RandomStream rng(seed, kLhsStream + j);
    std::vector<std::uint32_t> strata(N);
    std::iota(strata.begin(), strata.end(), 0u);
    shuffle(std::span(strata), rng);
    std::vector<double> column(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double u = (static_cast<double>(strata[i]) + rng.uniform_open()) / static_cast<double>(N);
      const double p = std::clamp(f_lo + u * (f_hi - f_lo), p_min, p_max);
      column[i] = std::clamp(m.distribution.quantile(p), m.lower, m.upper);
    }
    X.push_back(std::move(column));
  }
  return X;
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw DomainError("empirical CDF of an empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

std::size_t EmpiricalCdf::count_le(double y) const noexcept {
  return static_cast<std::size_t>(std::upper_bound(sorted_.begin(), sorted_.end(), y) -
                                  sorted_.begin());
}

double EmpiricalCdf::operator()(double y) const noexcept {
  return static_cast<double>(count_le(y)) / static_cast<double>(sorted_.size());
}

double ks_statistic(const EmpiricalCdf& F, const EmpiricalCdf& G) {
  return ks_sorted(F.sorted(), G.sorted());
}

double ks_statistic(const EmpiricalCdf& F, const EmpiricalCdf& G,
                    std::span<const double> points) {
  double best = 0.0;
  for (const double y : points) best = std::max(best, std::abs(F(y) - G(y)));
  return best;
}

std::vector<std::size_t> bin_sizes(std::size_t N, std::size_t n_intervals) {
  if (n_intervals == 0) throw ConfigError("n_intervals must be >= 1");
  std::vector<std::size_t> sizes(n_intervals, N / n_intervals);
  for (std::size_t k = 0; k < N % n_intervals; ++k) ++sizes[k];
  return sizes;
}

std::vector<double> pawn_indices(std::span<const std::vector<double>> X,
                                 std::span<const double> Y, std::size_t n_intervals) {
  const PawnEngine engine(X, Y, n_intervals);
  const std::vector<std::uint32_t> ones(Y.size(), 1u);
  const auto unconditional = engine.sorted_outputs(ones);
  std::vector<double> S(X.size());
  for (std::size_t j = 0; j < X.size(); ++j) S[j] = engine.index(j, ones, unconditional);
  return S;
}

BootstrapResult bootstrap(std::span<const std::vector<double>> X, std::span<const double> Y,
                          const GsaConfig& config) {
  const PawnEngine engine(X, Y, config.n_intervals);
  const std::size_t R = config.bootstrap_resamples;
  const std::size_t N = Y.size();
  std::vector<std::vector<double>> replicate_S(X.size(), std::vector<double>(R));
  std::vector<double> replicate_dummy(R);

  parallel_for(R, config.workers, [&](std::size_t r) {
    RandomStream rng(config.seed, kBootstrapStream + r);
    std::vector<std::uint32_t> mult(N, 0u);
    for (std::size_t i = 0; i < N; ++i) ++mult[rng.below(N)];
    const auto unconditional = engine.sorted_outputs(mult);
    for (std::size_t j = 0; j < X.size(); ++j) {
      replicate_S[j][r] = engine.index(j, mult, unconditional);
    }
    replicate_dummy[r] = dummy_replicate(unconditional, config.n_intervals, rng);
  });

  BootstrapResult result;
  const double alpha = (1.0 - config.ci_level) / 2.0;
  for (auto& s : replicate_S) {
    result.ci.push_back({sample_quantile(s, alpha), sample_quantile(s, 1.0 - alpha)});
  }
  result.dummy.mean =
      std::accumulate(replicate_dummy.begin(), replicate_dummy.end(), 0.0) / static_cast<double>(R);
  result.dummy.q95 = sample_quantile(replicate_dummy, config.dummy_quantile);
  return result;
}

std::vector<Interval> bootstrap_ci(std::span<const std::vector<double>> X,
                                   std::span<const double> Y, const GsaConfig& config) {
  return bootstrap(X, Y, config).ci;
}

DummyThreshold dummy_index(std::span<const double> Y, const GsaConfig& config) {
  return bootstrap({}, Y, config).dummy;
}

std::vector<Marginal> gsa_marginals(EquationId eq, DataSource source,
                                    std::span<const Marginal> available) {
  const auto used = parameters_used(eq);
  std::vector<Parameter> wanted(used.begin(), used.end());
  const bool derive_vc = contains(used, Parameter::Vc) && !find_marginal(available, Parameter::Vc);
  if (derive_vc) {
    for (const auto p : {Parameter::y1, Parameter::D50}) {
      if (!contains(wanted, p)) wanted.push_back(p);
    }
  }
  std::vector<Marginal> out;
  for (const auto p : kAllParameters) {
    if (!contains(wanted, p)) continue;
    if (const auto* m = find_marginal(available, p)) {
      out.push_back(*m);
      continue;
    }
    const bool substitute = p == Parameter::Vc || p == Parameter::S ||
                            (p == Parameter::L && find_marginal(available, Parameter::B)) ||
                            (source == DataSource::lab &&
                             (p == Parameter::theta || p == Parameter::Sh));
    if (!substitute) {
      throw ConfigError(fmt::format("{} needs {} but the {} marginals do not include it",
                                    display_name(eq), parameter_name(p), source_name(source)));
    }
  }
  if (derive_vc) {
    for (const auto p : {Parameter::y1, Parameter::D50}) {
      if (!find_marginal(out, p)) {
        throw ConfigError(fmt::format("{}: Vc is derived from y1 and D50, but {} has no marginal",
                                      display_name(eq), parameter_name(p)));
      }
    }
  }
  return out;
}

ScourInputs gsa_inputs(DataSource source, std::span<const Marginal> marginals,
                       std::span<const double> row, double length_ratio) {
  ScourInputs in;
  in.shape = ShapeTag::cylindrical;
  in.S = kDefaultSpacing;
  in.theta = 0.0;
  // Inputs the equation ignores still have to pass validation.
  for (const auto p : {Parameter::B, Parameter::y1, Parameter::V1, Parameter::D50}) {
    if (const auto* published = find_published_row(source, p); published && published->stats) {
      set_coordinate(in, p, published->stats->mean);
    }
  }
  for (std::size_t j = 0; j < marginals.size(); ++j) {
    if (marginals[j].parameter) set_coordinate(in, *marginals[j].parameter, row[j]);
  }
  if (!in.L) in.L = length_ratio * in.B;
  if (!in.Vc && in.y1 > 0.0 && in.D50 > 0.0) in.Vc = critical_velocity(in.y1, in.D50);
  return in;
}

SampleMatrix sample_equation(EquationId eq, DataSource source,
                             std::span<const Marginal> marginals, const GsaConfig& config) {
  validate(config);
  SampleMatrix sample;
  for (const auto& m : marginals) sample.names.push_back(m.name);
  sample.columns = latin_hypercube(marginals, config.N, config.seed);
  sample.Y.assign(config.N, 0.0);
  const std::size_t chunk = 256;
  const std::size_t chunks = (config.N + chunk - 1) / chunk;
  parallel_for(chunks, config.workers, [&](std::size_t c) {
    std::vector<double> row(marginals.size());
    for (std::size_t i = c * chunk; i < std::min(config.N, (c + 1) * chunk); ++i) {
      for (std::size_t j = 0; j < marginals.size(); ++j) row[j] = sample.columns[j][i];
      const auto in = gsa_inputs(source, marginals, row, config.length_ratio);
      try {
        sample.Y[i] = predict(eq, in);
      } catch (const NumericError& e) {
        throw NumericError(fmt::format("sample row {}: {}", i, e.what()));
      }
    }
  });
  return sample;
}

GsaReport analyse(EquationId eq, DataSource source, const SampleMatrix& sample,
                  std::span<const Marginal> marginals, const GsaConfig& config) {
  const auto S = pawn_indices(sample.columns, sample.Y, config.n_intervals);
  const auto boot = bootstrap(sample.columns, sample.Y, config);
  GsaReport report{eq, source, config, {}, std::nullopt, boot.dummy};
  for (std::size_t j = 0; j < marginals.size(); ++j) {
    SensitivityIndex idx{marginals[j].name,
                         marginals[j].parameter,
                         S[j],
                         std::min(boot.ci[j].lo, S[j]),
                         std::max(boot.ci[j].hi, S[j]),
                         false};
    idx.significant = idx.ci_lo > boot.dummy.q95;
    if (marginals[j].parameter) {
      report.indices.push_back(idx);
    } else {
      report.dummy_column = idx;
    }
  }
  return report;
}

GsaReport run_gsa(EquationId eq, DataSource source, const GsaConfig& config,
                  std::span<const Marginal> marginals) {
  validate(config);
  auto chosen = gsa_marginals(eq, source, marginals);
  if (config.dummy_column) chosen.push_back(dummy_marginal());
  const auto sample = sample_equation(eq, source, chosen, config);
  return analyse(eq, source, sample, chosen, config);
}

GsaReport run_gsa(EquationId eq, DataSource source, const GsaConfig& config) {
  const auto marginals = published_marginals(source);
  return run_gsa(eq, source, config, marginals);
}

void write_gsa_json(std::ostream& out, const GsaReport& report) {
  using nlohmann::ordered_json;
  auto index_json = [](const SensitivityIndex& idx) {
    return ordered_json{{"param", idx.name},
                        {"S", idx.S},
                        {"ci_lo", idx.ci_lo},
                        {"ci_hi", idx.ci_hi},
                        {"significant", idx.significant}};
  };
  ordered_json j;
  j["equation"] = display_name(report.equation);
  j["source"] = source_name(report.source);
  j["N"] = report.config.N;
  j["n_intervals"] = report.config.n_intervals;
  j["seed"] = report.config.seed;
  j["bootstrap_resamples"] = report.config.bootstrap_resamples;
  j["ci_level"] = report.config.ci_level;
  j["indices"] = ordered_json::array();
  for (const auto& idx : report.indices) j["indices"].push_back(index_json(idx));
  j["dummy"] = ordered_json{{"mean", report.dummy.mean}, {"q95", report.dummy.q95}};
  if (report.dummy_column) j["dummy"]["column"] = index_json(*report.dummy_column);
  out << j.dump(2) << '\n';
}

void write_conditional_cdfs(std::ostream& out, const SampleMatrix& sample,
                            std::size_t n_intervals) {
  auto write_curve = [&](std::string_view name, std::string_view bin, double x_lo, double x_hi,
                         std::vector<double> ys) {
    std::sort(ys.begin(), ys.end());
    const auto n = static_cast<double>(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
      if (i + 1 < ys.size() && ys[i + 1] == ys[i]) continue;
      out << csv::quote(name) << ',' << bin << ',' << csv::format_number(x_lo) << ','
          << csv::format_number(x_hi) << ',' << csv::format_number(ys[i]) << ','
          << csv::format_number(static_cast<double>(i + 1) / n) << '\n';
    }
  };
  out << "parameter,bin,x_lo,x_hi,y,F\n";
  const double inf = std::numeric_limits<double>::infinity();
  write_curve("all", "all", -inf, inf, sample.Y);
  const auto sizes = bin_sizes(sample.Y.size(), n_intervals);
  for (std::size_t j = 0; j < sample.columns.size(); ++j) {
    const auto order = order_by(sample.columns[j]);
    std::size_t start = 0;
    for (std::size_t k = 0; k < sizes.size(); ++k) {
      std::vector<double> ys;
      for (std::size_t i = start; i < start + sizes[k]; ++i) ys.push_back(sample.Y[order[i]]);
      write_curve(sample.names[j], std::to_string(k + 1), sample.columns[j][order[start]],
                  sample.columns[j][order[start + sizes[k] - 1]], ys);
      start += sizes[k];
    }
  }
}

}  // namespace scourbench
