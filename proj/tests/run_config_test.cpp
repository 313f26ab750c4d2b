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

#include "mvote/run_config.hpp"

#include <cstdlib>
#include <string>

#include "doctest.h"

namespace mvote {
namespace {

const std::string kFixtures = MVOTE_FIXTURES_DIR;

RunConfig from_text(const std::string& text, std::optional<std::uint64_t> seed = std::nullopt) {
  return run_config_from_json(Json::parse(text), ".", seed);
}

struct SeedEnv {
  explicit SeedEnv(const char* value) {
    if (value) {
      setenv(kSeedEnvVar, value, 1);
    } else {
      unsetenv(kSeedEnvVar);
    }
  }
  ~SeedEnv() { unsetenv(kSeedEnvVar); }
};

TEST_CASE("fixtures load") {
  const RunConfig example = load_run_config(kFixtures + "/cyclic3.cfg");
  CHECK(example.config.agent_count() == 3);
  CHECK(example.options.threshold_rule == ThresholdRule::kStatic);
  CHECK_FALSE(example.seed.has_value());

  const RunConfig trivial = load_run_config(kFixtures + "/trivial.cfg");
  CHECK(trivial.config.total_votes() == 3);
  CHECK(trivial.config.initial_thresholds().at(AlternativeId{1}) == Rational(7, 2));
  CHECK(trivial.config.initial_thresholds().at(AlternativeId{2}) == Rational(7, 2));
  CHECK(trivial.config.trivially_all_eliminated());

  CHECK_THROWS_AS(load_run_config(kFixtures + "/bad_threshold.cfg"), ConfigError);
  CHECK_THROWS_AS(load_run_config(kFixtures + "/does_not_exist.cfg"), ConfigError);
}

TEST_CASE("threshold forms") {
  const std::string head = R"({"alternatives": 4, "agents": [
      {"ranking": ["x1","x2","x3","x4"]}, {"ranking": ["x2","x1","x3","x4"]}], "thresholds": )";
  CHECK(from_text(head + R"("2n/m"})").config.initial_thresholds().at(AlternativeId{3}) == Rational(1));
  CHECK(from_text(head + R"("0.75"})").config.initial_thresholds().at(AlternativeId{0}) == Rational(3, 4));
  CHECK(from_text(head + R"(2})").config.initial_thresholds().at(AlternativeId{2}) == Rational(2));
  const RunConfig per = from_text(head + R"({"x1": "1/3", "x2": 1, "x3": "0", "x4": "2.5"}})");
  CHECK(per.config.initial_thresholds().at(AlternativeId{0}) == Rational(1, 3));
  CHECK(per.config.initial_thresholds().at(AlternativeId{3}) == Rational(5, 2));

  CHECK_THROWS_AS(from_text(head + R"({"x1": 1}})"), ConfigError);
  CHECK_THROWS_AS(from_text(head + R"({"x1": 1, "x2": 1, "x3": 1, "x9": 1}})"), ConfigError);
  CHECK_THROWS_AS(from_text(head + R"("-1"})"), ConfigError);
  CHECK_THROWS_AS(from_text(head + R"("two"})"), ConfigError);
}

TEST_CASE("unknown fields are rejected") {
  CHECK_THROWS_AS(from_text(R"({"alternatives": 2, "agents": [{"ranking": ["x1","x2"]}], "thresholds": 1, "colour": 1})"),
                  ConfigError);
  CHECK_THROWS_AS(
      from_text(R"({"alternatives": 2, "agents": [{"ranking": ["x1","x2"]}], "thresholds": 1, "engine": {"speed": 2}})"),
      ConfigError);
  CHECK_THROWS_AS(
      from_text(R"({"alternatives": 2, "agents": [{"ranking": ["x1","x2"]}], "thresholds": 1, "output": {"log": "x"}})"),
      ConfigError);
}

TEST_CASE("exactly one agent source") {
  CHECK_THROWS_AS(from_text(R"({"alternatives": 2, "thresholds": 1})"), ConfigError);
  CHECK_THROWS_AS(from_text(R"({"alternatives": 2, "agents": [{"ranking": ["x1","x2"]}],
                               "random_profile": {"agents": 3}, "thresholds": 1})"),
                  ConfigError);
}

TEST_CASE("random profile seeds: file, flag, environment, default") {
  const std::string with_seed = R"({"alternatives": 6, "random_profile": {"agents": 5, "seed": 11}, "thresholds": "2n/m"})";
  const std::string without = R"({"alternatives": 6, "random_profile": {"agents": 5}, "thresholds": "2n/m"})";

  SUBCASE("explicit seed in the file") {
    SeedEnv env(nullptr);
    CHECK(from_text(with_seed).seed == Seed{11, 0});
    CHECK(from_text(with_seed, 99).seed == Seed{99, 0});
  }
  SUBCASE("environment variable") {
    SeedEnv env("314");
    CHECK(resolve_seed(std::nullopt) == 314);
    CHECK(resolve_seed(5) == 5);
    CHECK(from_text(without).seed == Seed{314, 0});
    CHECK(from_text(with_seed).seed == Seed{11, 0});
  }
  SUBCASE("malformed environment variable") {
    SeedEnv env("12abc");
    CHECK_THROWS_AS(resolve_seed(std::nullopt), ConfigError);
  }
  SUBCASE("default") {
    SeedEnv env(nullptr);
    CHECK(resolve_seed(std::nullopt) == kDefaultSeed);
    const RunConfig a = from_text(without);
    const RunConfig b = from_text(without);
    CHECK(a.config == b.config);
    CHECK(a.seed == Seed{kDefaultSeed, 0});
  }
}

TEST_CASE("output path is relative to the config file") {
  const RunConfig run = run_config_from_json(
      Json::parse(R"({"alternatives": 2, "agents": [{"ranking": ["x1","x2"]}], "thresholds": 1,
                      "output": {"trace": "out/t.json"}})"),
      "/some/dir");
  REQUIRE(run.trace_out.has_value());
  CHECK(*run.trace_out == std::filesystem::path("/some/dir/out/t.json"));
}

}  // namespace
}  // namespace mvote
