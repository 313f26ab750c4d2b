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

// Repeated play of the elimination vote until at most one alternative is
// left, with a complete record of every stage.

#ifndef MVOTE_ENGINE_HPP_
#define MVOTE_ENGINE_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mvote/core.hpp"

namespace mvote {

enum class ThresholdRule {
  kUpdating,  // survivors absorb the thresholds of eliminated alternatives
  kStatic,    // thresholds never change
};

enum class LengthConvention {
  kRoundsPlayed,     // a game decided in the first round has length 1
  kRoundsPlusFinal,  // rounds played plus one terminal round
};

struct EngineOptions {
  ThresholdRule threshold_rule = ThresholdRule::kUpdating;
  LengthConvention length_convention = LengthConvention::kRoundsPlayed;
  // Hard stage cap; defaults to m + 8. Exceeding it is an engine fault.
  std::optional<std::size_t> max_stages;
  // Test-only fault injection: when nonzero an alternative survives while
  // r + slack >= f. Used by the audit's negative control.
  std::uint64_t test_elimination_slack = 0;

  bool operator==(const EngineOptions&) const = default;
};

struct StageRecord {
  std::size_t stage_index = 0;  // 1-based
  AlternativeSet live_before;
  ThresholdMap thresholds_before;
  Profile profile;
  Tally tally;
  AlternativeSet eliminated;
  ThresholdMap thresholds_after;  // survivors only

  AlternativeSet survivors() const;
  bool operator==(const StageRecord&) const = default;
};

struct Winner {
  AlternativeId alternative;
  bool operator==(const Winner&) const = default;
};
struct AllEliminated {
  bool operator==(const AllEliminated&) const = default;
};
// A stage eliminated nothing; with sincere deterministic voting it repeats
// forever from there.
struct NonTerminating {
  std::size_t at_stage = 0;
  bool operator==(const NonTerminating&) const = default;
};

using Outcome = std::variant<Winner, AllEliminated, NonTerminating>;

struct GameTrace {
  GameConfig config;
  EngineOptions options;
  std::vector<StageRecord> stages;
  Outcome outcome;

  std::size_t rounds_played() const { return stages.size(); }
  // Length under the trace's convention; empty for a non-terminating game.
  std::optional<std::size_t> length() const { return length(options.length_convention); }
  std::optional<std::size_t> length(LengthConvention convention) const;

  bool operator==(const GameTrace&) const = default;
};

// The stage cap was exceeded. Unreachable unless the engine is broken.
class EngineFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// replay() produced a different stage than the recorded one.
class ReplayDivergence : public std::runtime_error {
 public:
  ReplayDivergence(std::size_t stage, const std::string& what);
  std::size_t stage() const { return stage_; }

 private:
  std::size_t stage_;
};

GameTrace play(GameConfig config, const EngineOptions& options = {});

// Re-runs the recorded game and checks every stage and the outcome. Returns
// the fresh trace; throws ReplayDivergence naming the first differing stage.
GameTrace replay(const GameTrace& trace);

// Stage-by-stage audit of the elimination guarantee: wherever the threshold
// mass exceeded the vote mass, something must have been eliminated, and a
// game where that held at every stage lasts at most m - 1 rounds.
struct CertificateReport {
  std::size_t stages_checked = 0;
  std::size_t stages_with_condition = 0;  // stages where the guarantee applied
  std::optional<std::size_t> first_violation;
  bool condition_held_throughout = false;
  bool bound_respected = true;

  bool passed() const { return !first_violation && bound_respected; }
};

CertificateReport certify_eliminations(const GameTrace& trace);

// First stage whose post-update threshold mass differs from its pre-update
// mass. Stages that eliminated everything carry no thresholds and are
// skipped. Only meaningful for the updating rule.
std::optional<std::size_t> first_conservation_break(const GameTrace& trace);

// Checks the structural invariants of a trace (stage numbering, nested live
// sets, tally totals, outcome agreement). Throws std::invalid_argument.
void validate_trace(const GameTrace& trace);

std::string describe(const Outcome& outcome, const GameConfig& config);

}  // namespace mvote

#endif  // MVOTE_ENGINE_HPP_
