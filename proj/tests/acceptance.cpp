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

// Acceptance suite. One PASS/FAIL line per criterion; exits nonzero if any
// criterion fails. Thresholds and trial counts here are fixed by the
// acceptance criteria and must not be relaxed to make a run green.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mvote/audit.hpp"
#include "mvote/engine.hpp"
#include "mvote/experiments.hpp"
#include "mvote/reference_table.hpp"
#include "mvote/run_config.hpp"
#include "oracle/naive_game.hpp"

namespace {

using namespace mvote;
namespace fs = std::filesystem;

constexpr std::uint64_t kSeed = 20260101;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("%s  %d  %-32s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::size_t workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// Criteria 1 to 3 share one randomized suite.
void audit_criteria() {
  const auto start = std::chrono::steady_clock::now();
  AuditOptions opts;
  opts.trials = 10000;
  opts.seed = kSeed;
  const AuditReport r = run_audit(opts);
  const std::string secs = fmt(seconds_since(start), 1) + "s";

  report(1, "elimination-every-stage", r.elimination_violations == 0 && r.engine_errors == 0 && r.games >= 10000,
         std::to_string(r.games) + " games (" + std::to_string(r.updating_games) + " updating, " +
             std::to_string(r.static_games) + " static), " + std::to_string(r.stages) + " stages, " +
             std::to_string(r.elimination_violations) + " violations, " + std::to_string(r.engine_errors) +
             " engine errors, " + secs);
  report(2, "round-bound", r.bound_violations == 0 && r.engine_errors == 0,
         "max rounds " + std::to_string(r.max_rounds) + " (m <= " + std::to_string(opts.max_alternatives) + "), " +
             std::to_string(r.bound_violations) + " violations");
  const bool cases_seen = r.equal_split_stages > 0 && r.single_survivor_stages > 0 && r.proportional_stages > 0;
  report(3, "threshold-conservation", r.conservation_violations == 0 && r.engine_errors == 0 && cases_seen,
         std::to_string(r.conservation_violations) + " violations; stages: " +
             std::to_string(r.proportional_stages) + " proportional, " + std::to_string(r.equal_split_stages) +
             " equal-split, " + std::to_string(r.single_survivor_stages) + " single-survivor");
  for (const auto& v : r.first_violations) {
    std::printf("      game %zu stage %zu: %s\n", v.game, v.stage, v.what.c_str());
  }
}

void cyclic_fixture() {
  const RunConfig run = load_run_config(std::string(MVOTE_FIXTURES_DIR) + "/cyclic3.cfg");
  const bool static_rule = run.options.threshold_rule == ThresholdRule::kStatic;
  const GameTrace trace = play(run.config, run.options);
  const bool ok = static_rule && run.config.agent_count() == 3 &&
                  trace.outcome == Outcome{NonTerminating{1}};
  report(4, "cyclic-fixture-non-terminating", ok, describe(trace.outcome, trace.config));
}

void large_regime_and_trends() {
  const auto start = std::chrono::steady_clock::now();
  SweepSpec spec = reference_sweep_spec(kSeed);
  spec.trials = 1000;
  spec.length_convention = LengthConvention::kRoundsPlusFinal;
  const ExperimentReport sweep = run_sweep(spec, workers());
  const std::string secs = fmt(seconds_since(start), 1) + "s";

  // Criterion 5.
  std::vector<CellKey> cells;
  for (std::size_t n : {64, 128, 256, 512}) cells.push_back(CellKey{10, n});
  for (std::size_t m : {1280, 2560}) {
    for (const auto n : reference::kAgentCounts) cells.push_back(CellKey{m, n});
  }
  std::size_t matched = 0;
  double worst = 0.0;
  std::string misses;
  for (const auto& cell : cells) {
    const CellStats& s = sweep.at(cell.alternatives, cell.agents);
    const double published = *reference::mean_length(cell.alternatives, cell.agents);
    const double d_played = std::abs(s.mean_length(LengthConvention::kRoundsPlayed) - published);
    const double d_final = std::abs(s.mean_length(LengthConvention::kRoundsPlusFinal) - published);
    const double best = std::min(d_played, d_final);
    worst = std::max(worst, best);
    if (best <= 0.1 && s.non_terminating == 0) {
      ++matched;
    } else {
      misses += " (m=" + std::to_string(cell.alternatives) + ",n=" + std::to_string(cell.agents) + ")";
    }
  }

  SweepSpec small;
  small.agent_counts = {2, 4, 8};
  small.alternative_counts = {10};
  small.trials = 10000;
  small.master_seed = kSeed;
  const ConventionReport gap = calibrate_convention(small, workers());
  std::string small_cells;
  for (const auto& c : gap.cells) {
    small_cells += " n=" + std::to_string(c.cell.agents) + ":" + fmt(c.rounds_played) + "/" +
                   fmt(c.rounds_plus_final) + " vs " + fmt(*c.published, 2);
  }
  report(5, "large-regime-means", matched == cells.size(),
         std::to_string(matched) + "/" + std::to_string(cells.size()) + " cells within 0.1, worst " + fmt(worst) +
             (misses.empty() ? "" : ", missed" + misses) + "; small-cell gap (played/plus-final):" + small_cells +
             ", total deviation " + fmt(gap.total_deviation_rounds_played) + " / " +
             fmt(gap.total_deviation_rounds_plus_final) + "; sweep " + secs);

  // Criterion 6.
  const TrendReport trends = trend_check(sweep);
  std::vector<const TrendResult*> series;
  for (std::size_t m : {20, 40, 80}) series.push_back(trends.row(m));
  for (std::size_t n : {128, 256, 512}) series.push_back(trends.column(n));
  std::size_t confirmed = 0;
  std::string summary;
  std::vector<const TrendResult*> failed;
  for (const TrendResult* t : series) {
    if (t == nullptr) continue;
    if (t->confirms_trend()) ++confirmed; else failed.push_back(t);
    summary += " " + t->series + ":" + to_string(t->shape) + "@" + std::to_string(t->peak_x());
  }
  report(6, "trend-shapes", confirmed == 6, std::to_string(confirmed) + "/6 rise-then-fall;" + summary);
  for (const TrendResult* t : failed) {
    std::string pts;
    for (const auto& p : t->points) pts += " " + std::to_string(p.x) + ":" + fmt(p.mean) + "+-" + fmt(p.standard_error);
    std::printf("      %s%s\n", t->series.c_str(), pts.c_str());
  }
  std::size_t violations = 0;
  for (const auto& [key, stats] : sweep.cells) violations += stats.guarantee_violations;
  std::printf("      sweep guarantee violations: %zu\n", violations);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void sweep_determinism() {
  const fs::path base = fs::temp_directory_path() / ("mvote_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(base);
  const std::string spec = std::string(MVOTE_FIXTURES_DIR) + "/small_sweep.json";
  bool ran = true;
  for (const char* jobs : {"1", "8"}) {
    const std::string cmd = std::string("\"") + MVOTE_CLI_PATH + "\" sweep \"" + spec + "\" --out-dir \"" +
                            (base / jobs).string() + "\" --jobs " + jobs + " > /dev/null 2>&1";
    ran = ran && std::system(cmd.c_str()) == 0;
  }
  const std::string grid1 = slurp(base / "1" / "grid.csv");
  const std::string grid8 = slurp(base / "8" / "grid.csv");
  const std::string full1 = slurp(base / "1" / "report.json");
  const std::string full8 = slurp(base / "8" / "report.json");
  const bool ok = ran && !grid1.empty() && grid1 == grid8 && full1 == full8;
  report(7, "sweep-determinism", ok,
         std::string("jobs 1 vs 8: grid.csv ") + (grid1 == grid8 && !grid1.empty() ? "identical" : "DIFFERENT") +
             " (" + std::to_string(grid1.size()) + " bytes), report.json " +
             (full1 == full8 && !full1.empty() ? "identical" : "DIFFERENT"));
  fs::remove_all(base);
}

// Every ranking profile for n <= 3 agents over m <= 3 alternatives, unit
// weights, a grid of per-alternative thresholds and both rules.
void oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Rational> grid = {Rational(0), Rational(1, 2), Rational(2, 3), Rational(1),
                                      Rational(4, 3), Rational(2), Rational(3), Rational(7, 2)};
  std::size_t games = 0, mismatches = 0, non_terminating = 0;
  std::string first;
  for (std::size_t m = 1; m <= 3; ++m) {
    std::vector<std::vector<std::uint32_t>> perms;
    std::vector<std::uint32_t> p(m);
    for (std::uint32_t i = 0; i < m; ++i) p[i] = i;
    do perms.push_back(p); while (std::next_permutation(p.begin(), p.end()));

    std::size_t threshold_combos = 1;
    for (std::size_t i = 0; i < m; ++i) threshold_combos *= grid.size();

    for (std::size_t n = 1; n <= 3; ++n) {
      std::size_t profiles = 1;
      for (std::size_t j = 0; j < n; ++j) profiles *= perms.size();
      for (std::size_t pi = 0; pi < profiles; ++pi) {
        std::vector<PreferenceOrder> prefs;
        std::vector<std::vector<int>> raw;
        for (std::size_t j = 0, code = pi; j < n; ++j, code /= perms.size()) {
          const auto& perm = perms[code % perms.size()];
          prefs.push_back(PreferenceOrder::from_indices(perm));
          raw.emplace_back(perm.begin(), perm.end());
        }
        const std::vector<VoteWeight> weights(n, VoteWeight(1));
        const std::vector<long long> votes(n, 1);
        for (std::size_t ti = 0; ti < threshold_combos; ++ti) {
          ThresholdMap f;
          std::vector<oracle::Q> f1;
          for (std::uint32_t i = 0, code = static_cast<std::uint32_t>(ti); i < m; ++i, code /= grid.size()) {
            const Rational& v = grid[code % grid.size()];
            f[AlternativeId{i}] = v;
            f1.emplace_back(v.get_num().get_si(), v.get_den().get_si());
          }
          for (const bool updating : {true, false}) {
            ++games;
            EngineOptions opts;
            opts.threshold_rule = updating ? ThresholdRule::kUpdating : ThresholdRule::kStatic;
            const GameTrace trace = play(GameConfig(default_labels(m), weights, prefs, f), opts);
            const oracle::NaiveGame ref = oracle::play_naive(raw, votes, f1, updating);
            bool same = trace.stages.size() == ref.stages.size() &&
                        std::holds_alternative<NonTerminating>(trace.outcome) == ref.non_terminating;
            for (std::size_t k = 0; same && k < ref.stages.size(); ++k) {
              std::vector<int> live, kept;
              for (const auto id : trace.stages[k].live_before.members()) live.push_back(static_cast<int>(id.index));
              for (const auto id : trace.stages[k].survivors().members()) kept.push_back(static_cast<int>(id.index));
              same = live == ref.stages[k].live && kept == ref.stages[k].survivors;
            }
            if (ref.non_terminating) ++non_terminating;
            if (!same) {
              ++mismatches;
              if (first.empty()) {
                first = " first at n=" + std::to_string(n) + " m=" + std::to_string(m) + " profile " +
                        std::to_string(pi) + " thresholds " + std::to_string(ti);
              }
            }
          }
        }
      }
    }
  }
  report(8, "oracle-equivalence", mismatches == 0 && games > 0,
         std::to_string(games) + " games, " + std::to_string(non_terminating) + " non-terminating, " +
             std::to_string(mismatches) + " mismatches" + first + ", " + fmt(seconds_since(start), 1) + "s");
}

}  // namespace

int main() {
  try {
    audit_criteria();
    cyclic_fixture();
    large_regime_and_trends();
    sweep_determinism();
    oracle_equivalence();
  } catch (const std::exception& e) {
    std::printf("FAIL  acceptance suite aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
