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

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <string>

#include "mvote/trace_io.hpp"

namespace mvote {

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnvVar); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used, 10);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw ConfigError(kSeedEnvVar, "not an unsigned integer: '" + std::string(env) + "'");
  }
  return kDefaultSeed;
}

namespace {

std::vector<std::string> read_labels(const Json& doc) {
  if (doc.is_number_unsigned()) {
    const auto m = doc.get<std::size_t>();
    if (m == 0) throw ConfigError("alternatives", "at least one alternative is required");
    return default_labels(m);
  }
  if (!doc.is_array()) throw ConfigError("alternatives", "expected a list of labels or a count");
  std::vector<std::string> labels;
  for (const auto& label : doc) {
    if (!label.is_string()) throw ConfigError("alternatives", "labels must be strings");
    labels.push_back(label.get<std::string>());
  }
  return labels;
}

struct Agents {
  std::vector<VoteWeight> weights;
  std::vector<PreferenceOrder> orders;
  std::optional<Seed> seed;
};

Agents read_random_profile(const Json& doc, std::size_t m, std::optional<std::uint64_t> seed_override) {
  if (!doc.is_object()) throw ConfigError("random_profile", "expected an object");
  std::size_t n = 0;
  std::uint64_t weight = 1;
  std::optional<std::uint64_t> seed;
  for (const auto& [key, value] : doc.items()) {
    if (key == "agents") {
      if (!value.is_number_unsigned() || value.get<std::size_t>() == 0) {
        throw ConfigError("random_profile.agents", "expected a positive count");
      }
      n = value.get<std::size_t>();
    } else if (key == "weight") {
      if (!value.is_number_unsigned() || value.get<std::uint64_t>() == 0) {
        throw ConfigError("random_profile.weight", "expected an integer >= 1");
      }
      weight = value.get<std::uint64_t>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError("random_profile.seed", "expected an unsigned integer");
      seed = value.get<std::uint64_t>();
    } else {
      throw ConfigError("random_profile", "unknown field '" + key + "'");
    }
  }
  if (n == 0) throw ConfigError("random_profile.agents", "missing");
  const Seed s{seed_override ? *seed_override : resolve_seed(seed), 0};
  Agents agents;
  agents.orders = generate(UniformRandom{n, m, s});
  agents.weights.assign(n, VoteWeight(weight));
  agents.seed = s;
  return agents;
}

ThresholdMap read_thresholds(const Json& doc, const std::vector<std::string>& labels, std::size_t n) {
  const auto parse = [](const Json& value, const std::string& where) -> Rational {
    try {
      if (value.is_string()) return parse_rational(value.get<std::string>());
      if (value.is_number_integer()) return parse_rational(std::to_string(value.get<std::int64_t>()));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where, e.what());
    }
    throw ConfigError(where, "expected an integer, a decimal string or a \"p/q\" string");
  };
  if (doc.is_string() && doc.get<std::string>() == "2n/m") {
    return proportional_thresholds(n, labels.size());
  }
  if (doc.is_object()) {
    ThresholdMap out;
    for (const auto& [label, value] : doc.items()) {
      const auto it = std::find(labels.begin(), labels.end(), label);
      if (it == labels.end()) throw ConfigError("thresholds", "unknown alternative '" + label + "'");
      out[AlternativeId{static_cast<std::uint32_t>(it - labels.begin())}] =
          parse(value, "thresholds." + label);
    }
    if (out.size() != labels.size()) {
      throw ConfigError("thresholds", "every alternative needs a threshold");
    }
    return out;
  }
  const Rational uniform = parse(doc, "thresholds");
  ThresholdMap out;
  for (std::uint32_t i = 0; i < labels.size(); ++i) out[AlternativeId{i}] = uniform;
  return out;
}

}  // namespace

RunConfig run_config_from_json(const Json& doc, const std::filesystem::path& base_dir,
                               std::optional<std::uint64_t> seed_override) {
  if (!doc.is_object()) throw ConfigError("config", "expected an object");
  static const char* const kKnown[] = {"alternatives", "agents",     "profile_file", "random_profile",
                                       "thresholds",   "engine",     "output"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw ConfigError("config", "unknown field '" + key + "'");
    }
  }
  if (!doc.contains("alternatives")) throw ConfigError("alternatives", "missing");
  const std::vector<std::string> labels = read_labels(doc.at("alternatives"));

  const int sources = static_cast<int>(doc.contains("agents")) +
                      static_cast<int>(doc.contains("profile_file")) +
                      static_cast<int>(doc.contains("random_profile"));
  if (sources != 1) {
    throw ConfigError("agents", "give exactly one of 'agents', 'profile_file', 'random_profile'");
  }

  Agents agents;
  if (doc.contains("random_profile")) {
    agents = read_random_profile(doc.at("random_profile"), labels.size(), seed_override);
  } else {
    LabeledProfile profile;
    if (doc.contains("agents")) {
      Json profile_doc;
      profile_doc["agents"] = doc.at("agents");
      profile = profile_from_json(profile_doc, labels);
    } else {
      if (!doc.at("profile_file").is_string()) throw ConfigError("profile_file", "expected a path");
      profile = load_profile(base_dir / doc.at("profile_file").get<std::string>(), labels);
    }
    agents.weights = std::move(profile.weights);
    agents.orders = std::move(profile.orders);
  }

  if (!doc.contains("thresholds")) throw ConfigError("thresholds", "missing");
  ThresholdMap thresholds = read_thresholds(doc.at("thresholds"), labels, agents.weights.size());

  RunConfig run{GameConfig(labels, std::move(agents.weights), std::move(agents.orders),
                           std::move(thresholds)),
                EngineOptions{}, std::nullopt, agents.seed};
  if (doc.contains("engine")) run.options = options_from_json(doc.at("engine"));
  if (doc.contains("output")) {
    const Json& output = doc.at("output");
    if (!output.is_object()) throw ConfigError("output", "expected an object");
    for (const auto& [key, value] : output.items()) {
      if (key != "trace") throw ConfigError("output", "unknown field '" + key + "'");
      if (!value.is_string()) throw ConfigError("output.trace", "expected a path");
      run.trace_out = base_dir / value.get<std::string>();
    }
  }
  return run;
}

RunConfig load_run_config(const std::filesystem::path& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw ConfigError("config", path.string() + ": " + e.what());
  }
  return run_config_from_json(doc, path.parent_path(), seed_override);
}

}  // namespace mvote
