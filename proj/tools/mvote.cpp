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

// mvote: play, replay, sweep, calibrate and audit elimination-vote games.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 audit violation
// (or replay divergence), 3 non-terminating game.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mvote/audit.hpp"
#include "mvote/experiments.hpp"
#include "mvote/run_config.hpp"
#include "mvote/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitNonTerminating = 3;

std::string join_labels(const mvote::AlternativeSet& set, const mvote::GameConfig& config) {
  std::string out;
  for (const auto id : set.members()) {
    if (!out.empty()) out += ',';
    out += config.label(id);
  }
  return out.empty() ? "-" : out;
}

void print_stage_table(const mvote::GameTrace& trace) {
  const auto& config = trace.config;
  std::printf("%-6s %-5s %-14s %s\n", "stage", "live", "threshold mass", "tally | eliminated");
  for (const auto& stage : trace.stages) {
    std::string tally;
    for (const auto& [id, votes] : stage.tally.votes) {
      if (!tally.empty()) tally += ' ';
      tally += config.label(id) + "=" + std::to_string(votes);
    }
    std::printf("%-6zu %-5zu %-14s %s | %s\n", stage.stage_index, stage.live_before.size(),
                mvote::to_display_string(mvote::threshold_mass(stage.thresholds_before)).c_str(),
                tally.c_str(), join_labels(stage.eliminated, config).c_str());
  }
}

int cmd_play(const std::string& config_path, const std::optional<std::string>& trace_out,
             std::optional<std::uint64_t> seed) {
  mvote::RunConfig run = mvote::load_run_config(config_path, seed);
  if (run.config.trivially_all_eliminated()) {
    std::cerr << "warning: every threshold exceeds the total vote weight; the game has a trivial "
                 "solution (all alternatives are eliminated)\n";
  }
  const mvote::GameTrace trace = mvote::play(run.config, run.options);
  print_stage_table(trace);

  const std::string outcome = mvote::describe(trace.outcome, run.config);
  if (std::holds_alternative<mvote::NonTerminating>(trace.outcome)) {
    std::printf("%s\n", outcome.c_str());
  } else {
    std::printf("%s, K=%zu\n", outcome.c_str(), *trace.length());
  }
  if (run.seed) {
    std::printf("seed: %llu\n", static_cast<unsigned long long>(run.seed->master));
  }

  std::optional<std::filesystem::path> out = run.trace_out;
  if (trace_out) out = *trace_out;
  if (out) mvote::write_trace(trace, *out);
  return std::holds_alternative<mvote::NonTerminating>(trace.outcome) ? kExitNonTerminating : kExitOk;
}

int cmd_replay(const std::string& trace_path) {
  const mvote::GameTrace recorded = mvote::read_trace(trace_path);
  try {
    mvote::replay(recorded);
  } catch (const mvote::ReplayDivergence& e) {
    std::printf("divergence at stage %zu: %s\n", e.stage(), e.what());
    return kExitViolation;
  }
  std::printf("replay identical: %zu stages, %s\n", recorded.rounds_played(),
              mvote::describe(recorded.outcome, recorded.config).c_str());
  return kExitOk;
}

void print_trends(const mvote::TrendReport& trends) {
  const auto line = [](const char* kind, const mvote::TrendResult& r) {
    std::printf("%s %-7s %-17s peak at %zu\n", kind, r.series.c_str(), mvote::to_string(r.shape).c_str(),
                r.points.empty() ? 0 : r.peak_x());
  };
  for (const auto& r : trends.rows) line("row   ", r);
  for (const auto& c : trends.columns) line("column", c);
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, std::size_t jobs) {
  const mvote::SweepSpec spec = mvote::load_sweep_spec(spec_path);
  const mvote::ExperimentReport report = mvote::run_sweep(spec, jobs);
  const mvote::TrendReport trends = mvote::trend_check(report);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  {
    std::ofstream grid(dir / "grid.csv");
    mvote::write_grid_csv(report, grid);
  }
  {
    mvote::Json doc = mvote::report_to_json(report);
    doc["trends"] = mvote::trend_report_to_json(trends);
    std::ofstream full(dir / "report.json");
    full << doc.dump(2) << '\n';
  }
  std::ostringstream grid_text;
  mvote::write_grid_csv(report, grid_text);
  std::printf("%s", grid_text.str().c_str());
  print_trends(trends);

  std::size_t violations = 0;
  std::size_t non_terminating = 0;
  for (const auto& [key, stats] : report.cells) {
    violations += stats.guarantee_violations;
    non_terminating += stats.non_terminating;
  }
  if (non_terminating > 0) {
    std::fprintf(stderr, "warning: %zu non-terminating games excluded from the means\n", non_terminating);
  }
  std::printf("elimination-guarantee violations: %zu\n", violations);
  return kExitOk;
}

int cmd_calibrate(const std::string& spec_path, std::size_t jobs, const std::optional<std::string>& out) {
  const mvote::SweepSpec spec = mvote::load_sweep_spec(spec_path);
  const mvote::ConventionReport report = mvote::calibrate_convention(spec, jobs);
  std::printf("%-6s %-5s %-14s %-18s %s\n", "m", "n", "rounds_played", "rounds_plus_final", "published");
  for (const auto& c : report.cells) {
    std::printf("%-6zu %-5zu %-14.3f %-18.3f %s\n", c.cell.alternatives, c.cell.agents, c.rounds_played,
                c.rounds_plus_final, c.published ? std::to_string(*c.published).substr(0, 4).c_str() : "-");
  }
  std::printf("total |deviation|: rounds_played %.3f, rounds_plus_final %.3f\n",
              report.total_deviation_rounds_played, report.total_deviation_rounds_plus_final);
  std::printf("closer convention: %s\n", mvote::to_string(report.recommended).c_str());
  if (out) {
    std::ofstream file(*out);
    file << mvote::convention_report_to_json(report).dump(2) << '\n';
  }
  return kExitOk;
}

int cmd_audit(const mvote::AuditOptions& options) {
  const mvote::AuditReport report = mvote::run_audit(options);
  std::printf("games: %zu (updating %zu, static %zu), stages: %zu, longest game: %zu rounds\n", report.games,
              report.updating_games, report.static_games, report.stages, report.max_rounds);
  std::printf("redistribution stages: proportional %zu, equal split %zu, single survivor %zu\n",
              report.proportional_stages, report.equal_split_stages, report.single_survivor_stages);
  std::printf("elimination %zu, bound %zu, conservation %zu, engine errors %zu\n",
              report.elimination_violations, report.bound_violations, report.conservation_violations,
              report.engine_errors);
  for (const auto& v : report.first_violations) {
    std::printf("  game %zu (%s) stage %zu: %s\n", v.game, mvote::to_string(v.rule).c_str(), v.stage,
                v.what.c_str());
  }
  std::printf("%zu violations\n", report.violations());
  return report.passed() ? kExitOk : kExitViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multistage elimination voting: games, sweeps and audits"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<std::string> trace_out;
  std::optional<std::uint64_t> seed;
  auto* play = app.add_subcommand("play", "Play one game from a run configuration");
  play->add_option("config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
  play->add_option("--trace-out", trace_out, "Write the full trace here");
  play->add_option("--seed", seed, "Seed for random profiles (default: $MVOTE_SEED or built-in)");

  std::string trace_path;
  auto* replay = app.add_subcommand("replay", "Re-run a recorded trace and compare every stage");
  replay->add_option("trace", trace_path, "Trace file")->required()->check(CLI::ExistingFile);

  std::string spec_path;
  std::string out_dir = "sweep-out";
  std::size_t jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep of average game length");
  sweep->add_option("spec", spec_path, "Sweep specification (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out-dir", out_dir, "Directory for grid.csv and report.json");
  sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  std::optional<std::string> calibration_out;
  auto* calibrate = app.add_subcommand("calibrate", "Compare both length conventions with the published table");
  calibrate->add_option("spec", spec_path, "Sweep specification (JSON)")->required()->check(CLI::ExistingFile);
  calibrate->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  calibrate->add_option("--out", calibration_out, "Write the calibration report as JSON");

  mvote::AuditOptions audit_options;
  std::optional<std::uint64_t> audit_seed;
  auto* audit = app.add_subcommand("audit", "Randomised elimination-guarantee and conservation audit");
  audit->add_option("--trials", audit_options.trials, "Number of games")->check(CLI::PositiveNumber);
  audit->add_option("--seed", audit_seed, "Master seed (default: $MVOTE_SEED or built-in)");
  audit->add_option("--max-n", audit_options.max_agents, "Largest agent count")->check(CLI::PositiveNumber);
  audit->add_option("--max-m", audit_options.max_alternatives, "Largest alternative count")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
  audit->add_option("--max-weight", audit_options.max_weight, "Largest vote weight")->check(CLI::PositiveNumber);
  audit->add_option("--mutant-slack", audit_options.mutant_slack,
                    "Test hook: let alternatives survive this many votes short of their threshold")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*play) return cmd_play(config_path, trace_out, seed);
    if (*replay) return cmd_replay(trace_path);
    if (*sweep) return cmd_sweep(spec_path, out_dir, jobs);
    if (*calibrate) return cmd_calibrate(spec_path, jobs, calibration_out);
    if (*audit) {
      audit_options.seed = mvote::resolve_seed(audit_seed);
      return cmd_audit(audit_options);
    }
  } catch (const mvote::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const mvote::Json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
