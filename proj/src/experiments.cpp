// Copyright 2026 The mvote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mvote/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>
#include <utility>

#include "mvote/reference_table.hpp"
#include "mvote/run_config.hpp"
#include "mvote/trace_io.hpp"

namespace mvote {

void SweepSpec::validate() const {
  if (agent_counts.empty()) throw ConfigError("agent_counts", "must not be empty");
  if (alternative_counts.empty()) throw ConfigError("alternative_counts", "must not be empty");
  for (const auto n : agent_counts) {
    if (n == 0) throw ConfigError("agent_counts", "agent counts must be positive");
  }
  for (const auto m : alternative_counts) {
    if (m < 2) throw ConfigError("alternative_counts", "alternative counts must be at least 2");
  }
  if (trials == 0) throw ConfigError("trials", "must be at least 1");
  if (threshold_init != "2n/m") {
    throw ConfigError("threshold_init", "only \"2n/m\" is supported, got '" + threshold_init + "'");
  }
}

SweepSpec reference_sweep_spec(std::uint64_t master_seed) {
  SweepSpec spec;
  spec.agent_counts.assign(reference::kAgentCounts.begin(), reference::kAgentCounts.end());
  spec.alternative_counts.assign(reference::kAlternativeCounts.begin(),
                                 reference::kAlternativeCounts.end());
  spec.trials = reference::kTrialsPerCell;
  spec.master_seed = master_seed;
  return spec;
}

Json sweep_spec_to_json(const SweepSpec& spec) {
  Json doc;
  doc["agent_counts"] = spec.agent_counts;
  doc["alternative_counts"] = spec.alternative_counts;
  doc["trials"] = spec.trials;
  doc["master_seed"] = spec.master_seed;
  doc["length_convention"] = to_string(spec.length_convention);
  doc["threshold_rule"] = to_string(spec.threshold_rule);
  doc["threshold_init"] = spec.threshold_init;
  return doc;
}

namespace {

std::vector<std::size_t> read_counts(const Json& value, const char* field) {
  if (!value.is_array()) throw ConfigError(field, "expected a list of counts");
  std::vector<std::size_t> out;
  for (const auto& v : value) {
    if (!v.is_number_unsigned()) throw ConfigError(field, "counts must be non-negative integers");
    out.push_back(v.get<std::size_t>());
  }
  return out;
}

}  // namespace

SweepSpec sweep_spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("sweep", "expected an object");
  SweepSpec spec;
  std::optional<std::uint64_t> seed;
  for (const auto& [key, value] : doc.items()) {
    if (key == "agent_counts") {
      spec.agent_counts = read_counts(value, "agent_counts");
    } else if (key == "alternative_counts") {
      spec.alternative_counts = read_counts(value, "alternative_counts");
    } else if (key == "trials") {
      if (!value.is_number_unsigned()) throw ConfigError("trials", "expected a count");
      spec.trials = value.get<std::size_t>();
    } else if (key == "master_seed") {
      if (!value.is_number_unsigned()) throw ConfigError("master_seed", "expected an unsigned integer");
      seed = value.get<std::uint64_t>();
    } else if (key == "length_convention") {
      if (!value.is_string()) throw ConfigError("length_convention", "expected a string");
      spec.length_convention = parse_length_convention(value.get<std::string>());
    } else if (key == "threshold_rule") {
      if (!value.is_string()) throw ConfigError("threshold_rule", "expected a string");
      spec.threshold_rule = parse_threshold_rule(value.get<std::string>());
    } else if (key == "threshold_init") {
      if (!value.is_string()) throw ConfigError("threshold_init", "expected a string");
      spec.threshold_init = value.get<std::string>();
    } else {
      throw ConfigError("sweep", "unknown field '" + key + "'");
    }
  }
  spec.master_seed = resolve_seed(seed);
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("sweep", "cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("sweep", path.string() + ": " + e.what());
  }
  return sweep_spec_from_json(doc);
}

Seed trial_seed(std::uint64_t master, const CellKey& cell, std::size_t trial) {
  std::uint64_t h = mix64(cell.alternatives);
  h = mix64(h ^ cell.agents);
  h = mix64(h ^ trial);
  return Seed{master, h};
}

GameConfig sweep_game(const CellKey& cell, const Seed& seed) {
  return GameConfig(default_labels(cell.alternatives),
                    std::vector<VoteWeight>(cell.agents, VoteWeight(1)),
                    generate(UniformRandom{cell.agents, cell.alternatives, seed}),
                    proportional_thresholds(cell.agents, cell.alternatives));
}

double CellStats::mean_rounds() const {
  const std::size_t t = terminated();
  if (t == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(sum_rounds) / static_cast<double>(t);
}

double CellStats::mean_length(LengthConvention convention) const {
  return mean_rounds() + (convention == LengthConvention::kRoundsPlusFinal ? 1.0 : 0.0);
}

double CellStats::standard_error() const {
  const std::size_t t = terminated();
  if (t < 2) return 0.0;
  const double n = static_cast<double>(t);
  const double mean = static_cast<double>(sum_rounds) / n;
  const double var = (static_cast<double>(sum_sq_rounds) - n * mean * mean) / (n - 1.0);
  return std::sqrt(std::max(var, 0.0) / n);
}

double CellStats::winner_rate() const {
  return terminated() == 0 ? 0.0 : static_cast<double>(winners) / static_cast<double>(terminated());
}

double CellStats::all_eliminated_rate() const {
  return terminated() == 0 ? 0.0
                           : static_cast<double>(all_eliminated) / static_cast<double>(terminated());
}

void CellStats::merge(const CellStats& other) {
  trials += other.trials;
  winners += other.winners;
  all_eliminated += other.all_eliminated;
  non_terminating += other.non_terminating;
  sum_rounds += other.sum_rounds;
  sum_sq_rounds += other.sum_sq_rounds;
  max_rounds = std::max(max_rounds, other.max_rounds);
  guarantee_violations += other.guarantee_violations;
}

const CellStats& ExperimentReport::at(std::size_t alternatives, std::size_t agents) const {
  const auto it = cells.find(CellKey{alternatives, agents});
  if (it == cells.end()) {
    throw std::out_of_range("no cell m=" + std::to_string(alternatives) +
                            " n=" + std::to_string(agents));
  }
  return it->second;
}

double ExperimentReport::mean_length(std::size_t alternatives, std::size_t agents) const {
  return at(alternatives, agents).mean_length(spec.length_convention);
}

SweepError::SweepError(const std::string& what, ExperimentReport partial)
    : std::runtime_error(what), partial_(std::move(partial)) {}

namespace {

CellStats run_trial(const SweepSpec& spec, const CellKey& cell, std::size_t trial) {
  EngineOptions options;
  options.threshold_rule = spec.threshold_rule;
  options.length_convention = spec.length_convention;
  const GameTrace trace = play(sweep_game(cell, trial_seed(spec.master_seed, cell, trial)), options);

  CellStats stats;
  stats.trials = 1;
  if (std::holds_alternative<NonTerminating>(trace.outcome)) {
    stats.non_terminating = 1;
  } else {
    if (std::holds_alternative<Winner>(trace.outcome)) {
      stats.winners = 1;
    } else {
      stats.all_eliminated = 1;
    }
    stats.sum_rounds = trace.rounds_played();
    stats.sum_sq_rounds = trace.rounds_played() * trace.rounds_played();
    stats.max_rounds = trace.rounds_played();
  }
  if (!certify_eliminations(trace).passed()) stats.guarantee_violations = 1;
  return stats;
}

}  // namespace

ExperimentReport run_sweep(const SweepSpec& spec, std::size_t jobs) {
  spec.validate();
  std::vector<CellKey> cells;
  for (const auto m : spec.alternative_counts) {
    for (const auto n : spec.agent_counts) cells.push_back(CellKey{m, n});
  }
  const std::size_t units = cells.size() * spec.trials;
  std::vector<CellStats> results(units);
  std::vector<std::uint8_t> done(units, 0);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;

  const auto worker = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t unit = next.fetch_add(1, std::memory_order_relaxed);
      if (unit >= units) return;
      try {
        results[unit] = run_trial(spec, cells[unit / spec.trials], unit % spec.trials);
        done[unit] = 1;
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };

  jobs = std::max<std::size_t>(1, std::min(jobs, units));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  ExperimentReport report{spec, {}};
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellStats cell;
    bool complete = true;
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const std::size_t unit = c * spec.trials + t;
      if (done[unit] == 0) {
        complete = false;
        break;
      }
      cell.merge(results[unit]);
    }
    if (complete) report.cells.emplace(cells[c], cell);
  }

  if (error) {
    std::string message = "sweep aborted";
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      message += std::string(": ") + e.what();
    } catch (...) {
    }
    message += "; completed cells:";
    for (const auto& [key, stats] : report.cells) {
      message += " (m=" + std::to_string(key.alternatives) + ",n=" + std::to_string(key.agents) + ")";
    }
    throw SweepError(message, std::move(report));
  }
  return report;
}

namespace {

std::string fixed3(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", value);
  return buf;
}

}  // namespace

void write_grid_csv(const ExperimentReport& report, std::ostream& out) {
  out << "alternatives\\agents";
  for (const auto n : report.spec.agent_counts) out << ',' << n;
  out << '\n';
  for (const auto m : report.spec.alternative_counts) {
    out << m;
    for (const auto n : report.spec.agent_counts) {
      const auto it = report.cells.find(CellKey{m, n});
      out << ',' << (it == report.cells.end() ? std::string() : fixed3(it->second.mean_length(
                                                                        report.spec.length_convention)));
    }
    out << '\n';
  }
}

Json report_to_json(const ExperimentReport& report) {
  Json doc;
  doc["metadata"] = {{"engine_version", kEngineVersion},
                     {"generator", kGeneratorName},
                     {"length_convention", to_string(report.spec.length_convention)}};
  doc["spec"] = sweep_spec_to_json(report.spec);
  Json cells = Json::array();
  for (const auto& [key, stats] : report.cells) {
    Json c;
    c["alternatives"] = key.alternatives;
    c["agents"] = key.agents;
    c["trials"] = stats.trials;
    c["seed"] = report.spec.master_seed;
    c["mean_length"] = stats.mean_length(report.spec.length_convention);
    c["mean_rounds_played"] = stats.mean_rounds();
    c["standard_error"] = stats.standard_error();
    c["winner_rate"] = stats.winner_rate();
    c["all_eliminated_rate"] = stats.all_eliminated_rate();
    c["non_terminating"] = stats.non_terminating;
    c["max_rounds"] = stats.max_rounds;
    c["guarantee_violations"] = stats.guarantee_violations;
    if (const auto published = reference::mean_length(key.alternatives, key.agents)) {
      c["published_mean_length"] = *published;
    }
    cells.push_back(std::move(c));
  }
  doc["cells"] = std::move(cells);
  return doc;
}

std::string to_string(TrendShape shape) {
  switch (shape) {
    case TrendShape::kRiseThenFall:
      return "rise-then-fall";
    case TrendShape::kPeakAtBoundary:
      return "peak at boundary";
    case TrendShape::kFlat:
      return "flat";
    case TrendShape::kNotUnimodal:
      return "not unimodal";
  }
  return "unknown";
}

namespace {

constexpr double kSlack = 1e-12;

// Can points[from..to] (inclusive, walking in `step` direction) be made
// non-decreasing within their tolerance bands?
bool monotone_feasible(const std::vector<SeriesPoint>& points, const std::vector<double>& tol,
                       std::ptrdiff_t from, std::ptrdiff_t to, std::ptrdiff_t step) {
  double lo = -std::numeric_limits<double>::infinity();
  for (std::ptrdiff_t i = from;; i += step) {
    lo = std::max(lo, points[i].mean - tol[i]);
    if (lo > points[i].mean + tol[i] + kSlack) return false;
    if (i == to) return true;
  }
}

}  // namespace

TrendResult classify_series(std::string series, std::vector<SeriesPoint> points, double multiplier) {
  TrendResult result;
  result.series = std::move(series);
  result.points = std::move(points);
  result.tolerance_multiplier = multiplier;
  const auto& p = result.points;
  if (p.empty()) return result;

  std::vector<double> tol(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) tol[i] = multiplier * p[i].standard_error;

  const auto last = static_cast<std::ptrdiff_t>(p.size()) - 1;
  for (std::ptrdiff_t peak = 0; peak <= last && !result.unimodal; ++peak) {
    result.unimodal = monotone_feasible(p, tol, 0, peak, 1) && monotone_feasible(p, tol, last, peak, -1);
  }
  result.peak_index = static_cast<std::size_t>(
      std::max_element(p.begin(), p.end(),
                       [](const SeriesPoint& a, const SeriesPoint& b) { return a.mean < b.mean; }) -
      p.begin());

  double highest_low = -std::numeric_limits<double>::infinity();
  double lowest_high = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    highest_low = std::max(highest_low, p[i].mean - tol[i]);
    lowest_high = std::min(lowest_high, p[i].mean + tol[i]);
  }
  if (highest_low <= lowest_high + kSlack) {
    result.shape = TrendShape::kFlat;
    return result;
  }
  if (!result.unimodal) {
    result.shape = TrendShape::kNotUnimodal;
    return result;
  }
  const std::size_t k = result.peak_index;
  const bool rises = p[k].mean - p.front().mean > tol[k] + tol.front() + kSlack;
  const bool falls = p[k].mean - p.back().mean > tol[k] + tol.back() + kSlack;
  result.shape = rises && falls ? TrendShape::kRiseThenFall : TrendShape::kPeakAtBoundary;
  return result;
}

const TrendResult* TrendReport::row(std::size_t alternatives) const {
  const std::string name = "m=" + std::to_string(alternatives);
  for (const auto& r : rows) {
    if (r.series == name) return &r;
  }
  return nullptr;
}

const TrendResult* TrendReport::column(std::size_t agents) const {
  const std::string name = "n=" + std::to_string(agents);
  for (const auto& c : columns) {
    if (c.series == name) return &c;
  }
  return nullptr;
}

TrendReport trend_check(const ExperimentReport& report, double multiplier) {
  std::vector<std::size_t> ns = report.spec.agent_counts;
  std::vector<std::size_t> ms = report.spec.alternative_counts;
  std::sort(ns.begin(), ns.end());
  std::sort(ms.begin(), ms.end(), std::greater<>());
  const auto convention = report.spec.length_convention;

  const auto point = [&](std::size_t m, std::size_t n, std::size_t x) -> std::optional<SeriesPoint> {
    const auto it = report.cells.find(CellKey{m, n});
    if (it == report.cells.end() || it->second.terminated() == 0) return std::nullopt;
    return SeriesPoint{x, it->second.mean_length(convention), it->second.standard_error()};
  };

  TrendReport trends;
  for (auto m = ms.rbegin(); m != ms.rend(); ++m) {
    std::vector<SeriesPoint> points;
    for (const auto n : ns) {
      if (auto pt = point(*m, n, n)) points.push_back(*pt);
    }
    if (points.size() == ns.size()) {
      trends.rows.push_back(classify_series("m=" + std::to_string(*m), std::move(points), multiplier));
    }
  }
  for (const auto n : ns) {
    std::vector<SeriesPoint> points;
    for (const auto m : ms) {
      if (auto pt = point(m, n, m)) points.push_back(*pt);
    }
    if (points.size() == ms.size()) {
      trends.columns.push_back(classify_series("n=" + std::to_string(n), std::move(points), multiplier));
    }
  }
  return trends;
}

Json trend_report_to_json(const TrendReport& trends) {
  const auto encode = [](const TrendResult& r) {
    Json doc;
    doc["series"] = r.series;
    doc["shape"] = to_string(r.shape);
    doc["unimodal"] = r.unimodal;
    doc["confirms_trend"] = r.confirms_trend();
    doc["peak_x"] = r.points.empty() ? Json(nullptr) : Json(r.peak_x());
    Json means = Json::array();
    for (const auto& p : r.points) means.push_back({{"x", p.x}, {"mean", p.mean}, {"standard_error", p.standard_error}});
    doc["points"] = std::move(means);
    return doc;
  };
  Json doc;
  doc["rows"] = Json::array();
  for (const auto& r : trends.rows) doc["rows"].push_back(encode(r));
  doc["columns"] = Json::array();
  for (const auto& c : trends.columns) doc["columns"].push_back(encode(c));
  return doc;
}

ConventionReport calibrate_from_report(const ExperimentReport& report) {
  ConventionReport out;
  for (const auto& [key, stats] : report.cells) {
    ConventionCell cell;
    cell.cell = key;
    cell.rounds_played = stats.mean_length(LengthConvention::kRoundsPlayed);
    cell.rounds_plus_final = stats.mean_length(LengthConvention::kRoundsPlusFinal);
    cell.published = reference::mean_length(key.alternatives, key.agents);
    if (cell.published) {
      cell.deviation_rounds_played = std::abs(cell.rounds_played - *cell.published);
      cell.deviation_rounds_plus_final = std::abs(cell.rounds_plus_final - *cell.published);
      out.total_deviation_rounds_played += *cell.deviation_rounds_played;
      out.total_deviation_rounds_plus_final += *cell.deviation_rounds_plus_final;
    }
    out.cells.push_back(cell);
  }
  out.recommended = out.total_deviation_rounds_plus_final < out.total_deviation_rounds_played
                        ? LengthConvention::kRoundsPlusFinal
                        : LengthConvention::kRoundsPlayed;
  return out;
}

ConventionReport calibrate_convention(const SweepSpec& spec, std::size_t jobs) {
  return calibrate_from_report(run_sweep(spec, jobs));
}

Json convention_report_to_json(const ConventionReport& report) {
  Json doc;
  Json cells = Json::array();
  const auto opt = [](const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); };
  for (const auto& c : report.cells) {
    cells.push_back({{"alternatives", c.cell.alternatives},
                     {"agents", c.cell.agents},
                     {"rounds_played", c.rounds_played},
                     {"rounds_plus_final", c.rounds_plus_final},
                     {"published", opt(c.published)},
                     {"deviation_rounds_played", opt(c.deviation_rounds_played)},
                     {"deviation_rounds_plus_final", opt(c.deviation_rounds_plus_final)}});
  }
  doc["cells"] = std::move(cells);
  doc["total_deviation_rounds_played"] = report.total_deviation_rounds_played;
  doc["total_deviation_rounds_plus_final"] = report.total_deviation_rounds_plus_final;
  doc["recommended"] = to_string(report.recommended);
  return doc;
}

}  // namespace mvote
