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

// Monte Carlo sweeps of average game length over a grid of alternative and
// agent counts, with trend analysis and length-convention calibration.

#ifndef MVOTE_EXPERIMENTS_HPP_
#define MVOTE_EXPERIMENTS_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvote/engine.hpp"
#include "mvote/preferences.hpp"
#include "mvote/random.hpp"

namespace mvote {

inline constexpr const char* kEngineVersion = "mvote-engine/1.0";

struct SweepSpec {
  std::vector<std::size_t> agent_counts;
  std::vector<std::size_t> alternative_counts;
  std::size_t trials = 100;
  std::uint64_t master_seed = 0;
  LengthConvention length_convention = LengthConvention::kRoundsPlayed;
  ThresholdRule threshold_rule = ThresholdRule::kUpdating;
  // Only "2n/m" (every initial threshold is twice agents over alternatives).
  std::string threshold_init = "2n/m";

  // Throws ConfigError.
  void validate() const;
};

// Full published grid with 100 trials.
SweepSpec reference_sweep_spec(std::uint64_t master_seed);

Json sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const Json& doc);
SweepSpec load_sweep_spec(const std::filesystem::path& path);

struct CellKey {
  std::size_t alternatives = 0;
  std::size_t agents = 0;
  auto operator<=>(const CellKey&) const = default;
};

// Seed of one trial. Depends only on (master, m, n, trial), so adding cells
// to a sweep never changes existing cells.
Seed trial_seed(std::uint64_t master, const CellKey& cell, std::size_t trial);

// One game of the sweep: one vote per agent, thresholds 2n/m, uniform
// preferences drawn from trial_seed.
GameConfig sweep_game(const CellKey& cell, const Seed& seed);

struct CellStats {
  std::size_t trials = 0;
  std::size_t winners = 0;
  std::size_t all_eliminated = 0;
  std::size_t non_terminating = 0;  // excluded from the length statistics
  std::uint64_t sum_rounds = 0;
  std::uint64_t sum_sq_rounds = 0;
  std::size_t max_rounds = 0;
  // Games that broke the elimination guarantee (a non-terminating game or
  // more than m - 1 rounds although thresholds outweighed votes).
  std::size_t guarantee_violations = 0;

  std::size_t terminated() const { return winners + all_eliminated; }
  double mean_rounds() const;
  double mean_length(LengthConvention convention) const;
  // Standard error of the mean length (the same under both conventions).
  double standard_error() const;
  double winner_rate() const;
  double all_eliminated_rate() const;

  void merge(const CellStats& other);
  bool operator==(const CellStats&) const = default;
};

struct ExperimentReport {
  SweepSpec spec;
  std::map<CellKey, CellStats> cells;

  const CellStats& at(std::size_t alternatives, std::size_t agents) const;
  double mean_length(std::size_t alternatives, std::size_t agents) const;
};

// Thrown when a sweep cannot finish; carries the cells that did.
class SweepError : public std::runtime_error {
 public:
  SweepError(const std::string& what, ExperimentReport partial);
  const ExperimentReport& partial() const { return partial_; }

 private:
  ExperimentReport partial_;
};

// Runs every (cell, trial) with up to `jobs` worker threads. The result does
// not depend on `jobs`.
ExperimentReport run_sweep(const SweepSpec& spec, std::size_t jobs = 1);

// Rows are alternative counts, columns agent counts, cells the mean length
// with three decimals.
void write_grid_csv(const ExperimentReport& report, std::ostream& out);
Json report_to_json(const ExperimentReport& report);

// --- trends ---------------------------------------------------------------

struct SeriesPoint {
  std::size_t x = 0;
  double mean = 0.0;
  double standard_error = 0.0;
};

enum class TrendShape {
  kRiseThenFall,    // significant rise to an interior peak, then a significant fall
  kPeakAtBoundary,  // unimodal, but the rise or the fall is missing
  kFlat,            // every point within tolerance of every other
  kNotUnimodal,
};

std::string to_string(TrendShape shape);

struct TrendResult {
  std::string series;  // e.g. "m=40" or "n=128"
  std::vector<SeriesPoint> points;
  double tolerance_multiplier = 2.0;
  bool unimodal = false;
  std::size_t peak_index = 0;  // first maximum of the means
  TrendShape shape = TrendShape::kNotUnimodal;

  bool confirms_trend() const { return shape == TrendShape::kRiseThenFall; }
  std::size_t peak_x() const { return points.at(peak_index).x; }
};

// A series is unimodal when perturbing every mean by at most
// `multiplier` standard errors makes it non-decreasing then non-increasing.
TrendResult classify_series(std::string series, std::vector<SeriesPoint> points,
                            double multiplier = 2.0);

struct TrendReport {
  // Per alternative count: mean length over increasing agent counts.
  std::vector<TrendResult> rows;
  // Per agent count: mean length over decreasing alternative counts.
  std::vector<TrendResult> columns;

  const TrendResult* row(std::size_t alternatives) const;
  const TrendResult* column(std::size_t agents) const;
};

TrendReport trend_check(const ExperimentReport& report, double multiplier = 2.0);
Json trend_report_to_json(const TrendReport& trends);

// --- length convention calibration ---------------------------------------

struct ConventionCell {
  CellKey cell;
  double rounds_played = 0.0;
  double rounds_plus_final = 0.0;
  std::optional<double> published;
  std::optional<double> deviation_rounds_played;
  std::optional<double> deviation_rounds_plus_final;
};

struct ConventionReport {
  std::vector<ConventionCell> cells;
  double total_deviation_rounds_played = 0.0;
  double total_deviation_rounds_plus_final = 0.0;
  LengthConvention recommended = LengthConvention::kRoundsPlayed;
};

// Runs the sweep once and scores both conventions against the published
// table. The recommendation is the convention with the smaller total
// absolute deviation over cells that have a published value.
ConventionReport calibrate_convention(const SweepSpec& spec, std::size_t jobs = 1);
ConventionReport calibrate_from_report(const ExperimentReport& report);
Json convention_report_to_json(const ConventionReport& report);

}  // namespace mvote

#endif  // MVOTE_EXPERIMENTS_HPP_
