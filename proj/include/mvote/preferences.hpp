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

// Preference profiles: uniformly random strict orders for simulation and
// explicit, validated orders for fixtures.

#ifndef MVOTE_PREFERENCES_HPP_
#define MVOTE_PREFERENCES_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "mvote/core.hpp"
#include "mvote/random.hpp"

namespace mvote {

using Json = nlohmann::ordered_json;

// n independent orders over m alternatives, each uniform over all m! orders.
struct UniformRandom {
  std::size_t agents = 0;
  std::size_t alternatives = 0;
  Seed seed;
};

// Rankings given verbatim (by alternative index); validated on generation.
struct ExplicitProfile {
  std::vector<std::vector<std::uint32_t>> rankings;
};

using ProfileSpec = std::variant<UniformRandom, ExplicitProfile>;

// Throws ConfigError for a non-permutation, rankings of unequal length, or
// an empty uniform spec.
std::vector<PreferenceOrder> generate(const ProfileSpec& spec);

// In-place forward Fisher-Yates shuffle of the identity permutation.
PreferenceOrder random_order(std::size_t alternatives, Xoshiro256StarStar& rng);

// Agents read from a profile document:
//
//   {"alternatives": ["a", "b", "c"],
//    "agents": [{"ranking": ["b", "c", "a"], "weight": 2}, ...]}
//
// "weight" defaults to 1. When `labels` is non-empty the document's
// alternatives (if present) must equal it.
struct LabeledProfile {
  std::vector<std::string> labels;
  std::vector<VoteWeight> weights;
  std::vector<PreferenceOrder> orders;
};

LabeledProfile profile_from_json(const Json& doc,
                                 const std::vector<std::string>& labels = {});
LabeledProfile load_profile(const std::filesystem::path& path,
                            const std::vector<std::string>& labels = {});

// Maps labels to alternatives; throws ConfigError on unknown or repeated
// labels and on rankings that miss an alternative.
PreferenceOrder order_from_labels(const std::vector<std::string>& ranking,
                                  const std::vector<std::string>& labels);

}  // namespace mvote

#endif  // MVOTE_PREFERENCES_HPP_
