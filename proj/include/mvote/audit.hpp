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

// Randomised self-audit of the engine: games whose thresholds outweigh the
// votes must eliminate something at every stage and end within m - 1
// rounds, and the updating rule must conserve threshold mass exactly.

#ifndef MVOTE_AUDIT_HPP_
#define MVOTE_AUDIT_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mvote/engine.hpp"
#include "mvote/random.hpp"

namespace mvote {

struct AuditOptions {
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t max_agents = 16;
  std::size_t max_alternatives = 12;
  std::uint64_t max_weight = 3;
  // Fault injection forwarded to EngineOptions::test_elimination_slack.
  std::uint64_t mutant_slack = 0;
};

// Random game with 1..max_agents agents (weights 1..max_weight),
// 2..max_alternatives alternatives, uniform preferences and random rational
// thresholds whose sum exceeds the total vote weight.
GameConfig random_forcing_config(Xoshiro256StarStar& rng, const AuditOptions& options);

struct AuditViolation {
  std::size_t game = 0;
  ThresholdRule rule = ThresholdRule::kUpdating;
  std::size_t stage = 0;  // 0 when the game as a whole failed
  std::string what;
};

struct AuditReport {
  std::size_t games = 0;
  std::size_t updating_games = 0;
  std::size_t static_games = 0;
  std::size_t stages = 0;
  std::size_t max_rounds = 0;

  // Redistribution cases met under the updating rule.
  std::size_t proportional_stages = 0;
  std::size_t equal_split_stages = 0;
  std::size_t single_survivor_stages = 0;

  std::size_t elimination_violations = 0;   // forcing stage without elimination
  std::size_t bound_violations = 0;         // more than m - 1 rounds
  std::size_t conservation_violations = 0;  // threshold mass changed
  std::size_t engine_errors = 0;            // play() threw

  std::vector<AuditViolation> first_violations;  // at most 20

  std::size_t violations() const {
    return elimination_violations + bound_violations + conservation_violations + engine_errors;
  }
  bool passed() const { return violations() == 0; }
};

// Game i uses Seed{options.seed, i}; even games use the updating rule, odd
// games static thresholds.
AuditReport run_audit(const AuditOptions& options);

}  // namespace mvote

#endif  // MVOTE_AUDIT_HPP_
