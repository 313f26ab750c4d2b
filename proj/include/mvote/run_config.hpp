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

// Run configuration documents for single games.
//
//   {
//     "alternatives": ["a", "b", "c"],          // or a count m -> x1..xm
//     "agents": [{"ranking": [...], "weight": 1}, ...],
//        | "profile_file": "agents.json"        // relative to the config
//        | "random_profile": {"agents": 8, "weight": 1, "seed": 7},
//     "thresholds": "2n/m" | "1/2" | {"a": "1/2", "b": 1, "c": "0.5"},
//     "engine": {"threshold_rule": "updating", "length_convention": "rounds_played"},
//     "output": {"trace": "trace.json"}
//   }
//
// Unknown fields are rejected at every level.

#ifndef MVOTE_RUN_CONFIG_HPP_
#define MVOTE_RUN_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>

#include "mvote/engine.hpp"
#include "mvote/preferences.hpp"

namespace mvote {

inline constexpr std::uint64_t kDefaultSeed = 20260101;
inline constexpr const char* kSeedEnvVar = "MVOTE_SEED";

// Seed precedence: explicit flag, then MVOTE_SEED, then kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

struct RunConfig {
  GameConfig config;
  EngineOptions options;
  std::optional<std::filesystem::path> trace_out;
  std::optional<Seed> seed;  // set when the profile was drawn at random
};

// `seed_override` replaces the document's random-profile seed.
RunConfig run_config_from_json(const Json& doc, const std::filesystem::path& base_dir,
                               std::optional<std::uint64_t> seed_override = std::nullopt);
RunConfig load_run_config(const std::filesystem::path& path,
                          std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace mvote

#endif  // MVOTE_RUN_CONFIG_HPP_
