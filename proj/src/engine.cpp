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

#include "mvote/engine.hpp"

#include <algorithm>
#include <utility>

namespace mvote {

AlternativeSet StageRecord::survivors() const {
  AlternativeSet out = live_before;
  for (const AlternativeId id : eliminated.members()) out.erase(id);
  return out;
}

std::optional<std::size_t> GameTrace::length(LengthConvention convention) const {
  if (std::holds_alternative<NonTerminating>(outcome)) return std::nullopt;
  switch (convention) {
    case LengthConvention::kRoundsPlayed:
      return rounds_played();
    case LengthConvention::kRoundsPlusFinal:
      return rounds_played() + 1;
  }
  return std::nullopt;
}

ReplayDivergence::ReplayDivergence(std::size_t stage, const std::string& what)
    : std::runtime_error(what), stage_(stage) {}

namespace {

Elimination eliminate_with_slack(const Tally& counts, const ThresholdMap& thresholds,
                                 std::size_t universe, std::uint64_t slack) {
  Elimination out{AlternativeSet(universe), AlternativeSet(universe)};
  for (const auto& [id, f] : thresholds) {
    if (cmp(f, from_count(counts.at(id) + slack)) > 0) {
      out.eliminated.insert(id);
    } else {
      out.survivors.insert(id);
    }
  }
  return out;
}

ThresholdMap restrict_to(const ThresholdMap& thresholds, const AlternativeSet& keep) {
  ThresholdMap out;
  for (const auto& [id, f] : thresholds) {
    if (keep.contains(id)) out.emplace_hint(out.end(), id, f);
  }
  return out;
}

}  // namespace

GameTrace play(GameConfig config, const EngineOptions& options) {
  const std::size_t m = config.alternative_count();
  const std::size_t cap = options.max_stages.value_or(m + 8);

  AlternativeSet live = AlternativeSet::all(m);
  const ThresholdMap* thresholds = &config.initial_thresholds();
  std::vector<StageRecord> stages;
  Outcome outcome = Winner{AlternativeId{0}};

  while (live.size() >= 2) {
    const std::size_t k = stages.size() + 1;
    if (k > cap) {
      throw EngineFault("stage cap of " + std::to_string(cap) + " exceeded");
    }
    StageRecord record;
    record.stage_index = k;
    record.live_before = live;
    record.thresholds_before = *thresholds;
    record.profile = sincere_profile(config.preferences(), live);
    record.tally = tally(record.profile, config.weights(), live);

    Elimination result = options.test_elimination_slack == 0
                             ? eliminate(record.tally, record.thresholds_before)
                             : eliminate_with_slack(record.tally, record.thresholds_before, m,
                                                    options.test_elimination_slack);
    record.eliminated = result.eliminated;

    if (result.survivors.empty()) {
      stages.push_back(std::move(record));
      outcome = AllEliminated{};
      break;
    }
    if (result.eliminated.empty()) {
      record.thresholds_after = record.thresholds_before;
      stages.push_back(std::move(record));
      outcome = NonTerminating{k};
      break;
    }

    record.thresholds_after = options.threshold_rule == ThresholdRule::kUpdating
                                  ? update_thresholds(record.thresholds_before, record.tally,
                                                      result.survivors, result.eliminated)
                                  : restrict_to(record.thresholds_before, result.survivors);
    stages.push_back(std::move(record));
    thresholds = &stages.back().thresholds_after;

    live = AlternativeSet(m);
    for (const AlternativeId id : result.survivors.members()) live.insert(id);
    if (live.size() == 1) {
      outcome = Winner{live.members().front()};
    }
  }

  return GameTrace{std::move(config), options, std::move(stages), outcome};
}

GameTrace replay(const GameTrace& trace) {
  GameTrace fresh = play(trace.config, trace.options);
  const std::size_t common = std::min(fresh.stages.size(), trace.stages.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (!(fresh.stages[i] == trace.stages[i])) {
      throw ReplayDivergence(i + 1, "replay diverged at stage " + std::to_string(i + 1));
    }
  }
  if (fresh.stages.size() != trace.stages.size()) {
    throw ReplayDivergence(common + 1, "replay diverged at stage " + std::to_string(common + 1) +
                                           ": recorded " + std::to_string(trace.stages.size()) +
                                           " stages, replay played " +
                                           std::to_string(fresh.stages.size()));
  }
  if (!(fresh.outcome == trace.outcome)) {
    throw ReplayDivergence(common, "replay reached a different outcome");
  }
  return fresh;
}

CertificateReport certify_eliminations(const GameTrace& trace) {
  CertificateReport report;
  bool held = true;
  for (const auto& stage : trace.stages) {
    ++report.stages_checked;
    if (forces_elimination(stage.thresholds_before, trace.config.weights())) {
      ++report.stages_with_condition;
      if (stage.eliminated.empty() && !report.first_violation) {
        report.first_violation = stage.stage_index;
      }
    } else {
      held = false;
    }
  }
  report.condition_held_throughout = held && !trace.stages.empty();
  if (report.condition_held_throughout) {
    const std::size_t m = trace.config.alternative_count();
    report.bound_respected = !std::holds_alternative<NonTerminating>(trace.outcome) &&
                             trace.rounds_played() + 1 <= m;
  }
  return report;
}

std::optional<std::size_t> first_conservation_break(const GameTrace& trace) {
  for (const auto& stage : trace.stages) {
    if (stage.thresholds_after.empty()) continue;
    if (threshold_mass(stage.thresholds_after) != threshold_mass(stage.thresholds_before)) {
      return stage.stage_index;
    }
  }
  return std::nullopt;
}

namespace {

void require(bool condition, std::size_t stage, const std::string& what) {
  if (!condition) {
    throw std::invalid_argument("trace stage " + std::to_string(stage) + ": " + what);
  }
}

std::vector<AlternativeId> keys(const ThresholdMap& thresholds) {
  std::vector<AlternativeId> out;
  for (const auto& [id, f] : thresholds) out.push_back(id);
  return out;
}

}  // namespace

void validate_trace(const GameTrace& trace) {
  const GameConfig& config = trace.config;
  const std::size_t m = config.alternative_count();
  AlternativeSet live = AlternativeSet::all(m);
  ThresholdMap thresholds = config.initial_thresholds();

  for (std::size_t i = 0; i < trace.stages.size(); ++i) {
    const StageRecord& stage = trace.stages[i];
    const std::size_t k = i + 1;
    require(stage.stage_index == k, k, "stage index out of sequence");
    require(live.size() >= 2, k, "stage played with fewer than two live alternatives");
    require(stage.live_before == live, k, "live set does not follow from the previous stage");
    require(stage.thresholds_before == thresholds, k,
            "thresholds do not follow from the previous stage");
    require(stage.profile.size() == config.agent_count(), k, "profile size differs from agent count");
    for (const AlternativeId choice : stage.profile) {
      require(live.contains(choice), k, "vote for an eliminated alternative");
    }
    require(stage.tally == tally(stage.profile, config.weights(), live), k,
            "tally does not match the profile");
    require(stage.eliminated.is_subset_of(live), k, "eliminated set is not live");

    const AlternativeSet survivors = stage.survivors();
    if (!survivors.empty()) {
      require(keys(stage.thresholds_after) == survivors.members(), k,
              "post-update thresholds are not keyed by the survivors");
    } else {
      require(stage.thresholds_after.empty(), k, "thresholds recorded after total elimination");
    }
    live = survivors;
    thresholds = stage.thresholds_after;
  }

  const auto fail = [](const std::string& what) {
    throw std::invalid_argument("trace outcome: " + what);
  };
  if (trace.stages.empty()) {
    if (m != 1 || !(trace.outcome == Outcome{Winner{AlternativeId{0}}})) {
      fail("a game without stages must have a single alternative");
    }
    return;
  }
  const StageRecord& last = trace.stages.back();
  if (const auto* nt = std::get_if<NonTerminating>(&trace.outcome)) {
    if (!last.eliminated.empty() || nt->at_stage != last.stage_index) {
      fail("non-termination must be flagged at a stage without eliminations");
    }
  } else if (const auto* w = std::get_if<Winner>(&trace.outcome)) {
    if (live.size() != 1 || !live.contains(w->alternative)) fail("winner is not the last survivor");
  } else if (!live.empty()) {
    fail("all-eliminated outcome with survivors left");
  }
}

std::string describe(const Outcome& outcome, const GameConfig& config) {
  if (const auto* w = std::get_if<Winner>(&outcome)) return "winner: " + config.label(w->alternative);
  if (const auto* nt = std::get_if<NonTerminating>(&outcome)) {
    return "non-terminating at stage " + std::to_string(nt->at_stage);
  }
  return "all eliminated";
}

}  // namespace mvote
