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

#include "mvote/audit.hpp"

#include <array>

#include "mvote/preferences.hpp"

namespace mvote {

GameConfig random_forcing_config(Xoshiro256StarStar& rng, const AuditOptions& options) {
  const std::size_t n = 1 + rng.below(options.max_agents);
  const std::size_t m = 2 + rng.below(options.max_alternatives - 1);

  std::vector<VoteWeight> weights;
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    weights.emplace_back(1 + rng.below(options.max_weight));
    total += weights.back().votes();
  }
  std::vector<PreferenceOrder> prefs;
  for (std::size_t j = 0; j < n; ++j) prefs.push_back(random_order(m, rng));

  // Integer thresholds are common so that exact ties r = f occur.
  static constexpr std::array<std::uint64_t, 6> kDenominators = {1, 1, 1, 2, 3, 4};
  ThresholdMap thresholds;
  for (;;) {
    thresholds.clear();
    const std::uint64_t q = kDenominators[rng.below(kDenominators.size())];
    const std::uint64_t top = (3 * total * q) / m + 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      thresholds[AlternativeId{i}] = from_count(rng.below(top + 1)) / from_count(q);
    }
    if (threshold_mass(thresholds) > from_count(total)) break;
  }
  return GameConfig(default_labels(m), std::move(weights), std::move(prefs), std::move(thresholds));
}

namespace {

void note(AuditReport& report, AuditViolation violation) {
  if (report.first_violations.size() < 20) report.first_violations.push_back(std::move(violation));
}

}  // namespace

AuditReport run_audit(const AuditOptions& options) {
  if (options.max_agents == 0 || options.max_alternatives < 2 || options.max_weight == 0) {
    throw ConfigError("audit", "need max agents >= 1, max alternatives >= 2 and max weight >= 1");
  }
  AuditReport report;
  for (std::size_t game = 0; game < options.trials; ++game) {
    Xoshiro256StarStar rng(Seed{options.seed, game});
    const GameConfig config = random_forcing_config(rng, options);
    EngineOptions engine;
    engine.threshold_rule = game % 2 == 0 ? ThresholdRule::kUpdating : ThresholdRule::kStatic;
    engine.test_elimination_slack = options.mutant_slack;
    ++report.games;
    ++(engine.threshold_rule == ThresholdRule::kUpdating ? report.updating_games : report.static_games);

    GameTrace trace{config, engine, {}, AllEliminated{}};
    try {
      trace = play(config, engine);
    } catch (const std::exception& e) {
      ++report.engine_errors;
      note(report, {game, engine.threshold_rule, 0, std::string("engine error: ") + e.what()});
      continue;
    }
    report.stages += trace.stages.size();
    report.max_rounds = std::max(report.max_rounds, trace.rounds_played());

    // Every stage of a forcing game must eliminate something.
    for (const auto& stage : trace.stages) {
      if (forces_elimination(stage.thresholds_before, config.weights()) && stage.eliminated.empty()) {
        ++report.elimination_violations;
        note(report, {game, engine.threshold_rule, stage.stage_index, "forcing stage eliminated nothing"});
      }
    }
    const CertificateReport certificate = certify_eliminations(trace);
    if (!certificate.bound_respected) {
      ++report.bound_violations;
      note(report, {game, engine.threshold_rule, 0,
                    "played " + std::to_string(trace.rounds_played()) + " rounds with " +
                        std::to_string(config.alternative_count()) + " alternatives"});
    }

    if (engine.threshold_rule == ThresholdRule::kUpdating) {
      if (const auto stage = first_conservation_break(trace)) {
        ++report.conservation_violations;
        note(report, {game, engine.threshold_rule, *stage, "threshold mass not conserved"});
      }
      for (const auto& stage : trace.stages) {
        const AlternativeSet survivors = stage.survivors();
        if (survivors.empty() || stage.eliminated.empty()) continue;
        switch (redistribution_kind(stage.tally, stage.thresholds_before, survivors, stage.eliminated)) {
          case Redistribution::kProportional:
            ++report.proportional_stages;
            break;
          case Redistribution::kEqualSplit:
            ++report.equal_split_stages;
            break;
          case Redistribution::kSingleSurvivor:
            ++report.single_survivor_stages;
            break;
          case Redistribution::kNone:
            break;
        }
      }
    }
  }
  return report;
}

}  // namespace mvote
