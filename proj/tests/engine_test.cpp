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

#include <string>

#include "doctest.h"
#include "mvote/run_config.hpp"

namespace mvote {
namespace {

const std::string kFixtures = MVOTE_FIXTURES_DIR;

PreferenceOrder order(std::initializer_list<std::uint32_t> one_based) {
  std::vector<std::uint32_t> idx;
  for (auto i : one_based) idx.push_back(i - 1);
  return PreferenceOrder::from_indices(idx);
}

ThresholdMap uniform(std::size_t m, const Rational& f) {
  ThresholdMap t;
  for (std::uint32_t i = 0; i < m; ++i) t[AlternativeId{i}] = f;
  return t;
}

GameConfig make(std::vector<PreferenceOrder> prefs, ThresholdMap f, std::vector<std::uint64_t> votes = {}) {
  const std::size_t m = f.size();
  std::vector<VoteWeight> w;
  for (std::size_t j = 0; j < prefs.size(); ++j) w.emplace_back(votes.empty() ? 1 : votes[j]);
  return GameConfig(default_labels(m), std::move(w), std::move(prefs), std::move(f));
}

TEST_CASE("three agents with cyclic tops and unit thresholds never terminate") {
  const RunConfig run = load_run_config(kFixtures + "/cyclic3.cfg");
  const GameTrace trace = play(run.config, run.options);
  REQUIRE(std::holds_alternative<NonTerminating>(trace.outcome));
  CHECK(std::get<NonTerminating>(trace.outcome).at_stage == 1);
  REQUIRE(trace.stages.size() == 1);
  CHECK(trace.stages[0].eliminated.empty());
  CHECK_FALSE(trace.length().has_value());
  CHECK(describe(trace.outcome, trace.config) == "non-terminating at stage 1");

  // The updating rule gives the same answer: nothing is eliminated, nothing moves.
  const GameTrace updating = play(run.config, EngineOptions{});
  CHECK(updating.outcome == Outcome{NonTerminating{1}});
}

TEST_CASE("unanimity wins in one round") {
  const GameTrace trace = play(make({order({1, 2}), order({1, 2})}, uniform(2, Rational(1, 2))));
  CHECK(trace.outcome == Outcome{Winner{AlternativeId{0}}});
  CHECK(trace.rounds_played() == 1);
  CHECK(trace.length(LengthConvention::kRoundsPlayed) == 1u);
  CHECK(trace.length(LengthConvention::kRoundsPlusFinal) == 2u);
  CHECK(describe(trace.outcome, trace.config) == "winner: x1");
}

TEST_CASE("two agents, ten alternatives at 2n/m") {
  // Stage 1 keeps the two tops at thresholds 2 each; stage 2 has one vote
  // against threshold 2 for each, so both go.
  std::vector<std::uint32_t> a{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<std::uint32_t> b{2, 1, 3, 4, 5, 6, 7, 8, 9, 10};
  std::vector<PreferenceOrder> prefs;
  for (const auto* r : {&a, &b}) {
    std::vector<std::uint32_t> idx;
    for (auto i : *r) idx.push_back(i - 1);
    prefs.push_back(PreferenceOrder::from_indices(idx));
  }
  const GameTrace trace = play(make(prefs, proportional_thresholds(2, 10)));
  CHECK(std::holds_alternative<AllEliminated>(trace.outcome));
  REQUIRE(trace.rounds_played() == 2);
  CHECK(trace.stages[0].eliminated.size() == 8);
  CHECK(trace.stages[0].thresholds_after.at(AlternativeId{0}) == Rational(2));
  CHECK(trace.stages[0].thresholds_after.at(AlternativeId{1}) == Rational(2));
  CHECK(trace.stages[1].eliminated.size() == 2);
  CHECK(trace.stages[1].thresholds_after.empty());
  CHECK(describe(trace.outcome, trace.config) == "all eliminated");
  CHECK(certify_eliminations(trace).passed());
  CHECK(certify_eliminations(trace).condition_held_throughout);
  CHECK_FALSE(first_conservation_break(trace).has_value());
}

TEST_CASE("static thresholds are carried over unchanged") {
  const GameConfig cfg = make({order({1, 2, 3}), order({1, 3, 2}), order({2, 1, 3})}, uniform(3, 1));
  const GameTrace trace = play(cfg, EngineOptions{ThresholdRule::kStatic});
  REQUIRE(trace.stages.size() >= 1);
  for (const auto& [id, f] : trace.stages[0].thresholds_after) CHECK(f == Rational(1));
}

TEST_CASE("a single alternative wins without playing") {
  const GameTrace trace = play(make({order({1})}, uniform(1, 5)));
  CHECK(trace.outcome == Outcome{Winner{AlternativeId{0}}});
  CHECK(trace.rounds_played() == 0);
}

TEST_CASE("custom labels appear in describe") {
  GameConfig cfg({"apple", "pear"}, {VoteWeight(1)}, {order({2, 1})}, uniform(2, 1));
  const GameTrace trace = play(cfg);
  CHECK(describe(trace.outcome, trace.config) == "winner: pear");
}

TEST_CASE("stage cap exceeded is an engine fault") {
  const GameConfig cfg = make({order({1, 2, 3}), order({2, 1, 3})}, uniform(3, Rational(2, 3)));
  EngineOptions opts;
  opts.max_stages = 0;
  CHECK_THROWS_AS(play(cfg, opts), EngineFault);
}

TEST_CASE("certificate is not applicable where thresholds do not exceed the votes") {
  const RunConfig run = load_run_config(kFixtures + "/cyclic3.cfg");
  const CertificateReport report = certify_eliminations(play(run.config, run.options));
  CHECK(report.stages_checked == 1);
  CHECK(report.stages_with_condition == 0);
  CHECK_FALSE(report.condition_held_throughout);
  CHECK(report.passed());
}

TEST_CASE("certificate catches an engine that refuses to eliminate") {
  // Thresholds 2 each against three single votes: the forcing condition
  // holds, so a correct engine eliminates everything at stage 1.
  const GameConfig cfg = make({order({1, 2, 3}), order({2, 3, 1}), order({3, 1, 2})}, uniform(3, 2));
  CHECK(certify_eliminations(play(cfg)).passed());

  EngineOptions broken;
  broken.test_elimination_slack = 1;
  const GameTrace bad = play(cfg, broken);
  const CertificateReport report = certify_eliminations(bad);
  CHECK_FALSE(report.passed());
  REQUIRE(report.first_violation.has_value());
  CHECK(*report.first_violation == 1);
}

TEST_CASE("replay reproduces a game and reports the first divergent stage") {
  std::vector<PreferenceOrder> prefs{order({1, 2, 3, 4}), order({2, 1, 3, 4}), order({3, 1, 2, 4}),
                                     order({1, 3, 2, 4})};
  const GameTrace trace = play(make(prefs, proportional_thresholds(4, 4)));
  CHECK(replay(trace) == trace);
  CHECK_NOTHROW(validate_trace(trace));

  REQUIRE(trace.stages.size() >= 1);
  GameTrace tampered = trace;
  tampered.stages[0].tally.votes.begin()->second += 1;
  try {
    replay(tampered);
    FAIL("expected divergence");
  } catch (const ReplayDivergence& e) {
    CHECK(e.stage() == 1);
  }
  CHECK_THROWS_AS(validate_trace(tampered), std::invalid_argument);
}

TEST_CASE("validate_trace rejects a wrong outcome") {
  const GameTrace trace = play(make({order({1, 2}), order({1, 2})}, uniform(2, 1)));
  GameTrace tampered = trace;
  tampered.outcome = Winner{AlternativeId{1}};
  CHECK_THROWS_AS(validate_trace(tampered), std::invalid_argument);
  tampered.outcome = AllEliminated{};
  CHECK_THROWS_AS(validate_trace(tampered), std::invalid_argument);
}

TEST_CASE("conservation break is detected in a tampered trace") {
  std::vector<PreferenceOrder> prefs{order({1, 2, 3}), order({1, 2, 3}), order({2, 1, 3})};
  const GameTrace trace = play(make(prefs, uniform(3, 1)));
  CHECK_FALSE(first_conservation_break(trace).has_value());
  GameTrace tampered = trace;
  REQUIRE_FALSE(tampered.stages[0].thresholds_after.empty());
  tampered.stages[0].thresholds_after.begin()->second += Rational(1, 7);
  CHECK(first_conservation_break(tampered) == 1u);
}

TEST_CASE("weighted votes: a heavy agent carries its top") {
  const GameConfig cfg = make({order({1, 2, 3}), order({2, 3, 1}), order({3, 2, 1})}, uniform(3, 2), {3, 1, 1});
  const GameTrace trace = play(cfg);
  CHECK(trace.outcome == Outcome{Winner{AlternativeId{0}}});
  CHECK(trace.stages[0].tally.at(AlternativeId{0}) == 3);
  CHECK(trace.stages[0].thresholds_after.at(AlternativeId{0}) == Rational(6));
}

}  // namespace
}  // namespace mvote
