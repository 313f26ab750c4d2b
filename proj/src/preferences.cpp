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

#include "mvote/preferences.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <utility>

namespace mvote {

PreferenceOrder random_order(std::size_t alternatives, Xoshiro256StarStar& rng) {
  std::vector<AlternativeId> ranking(alternatives);
  for (std::uint32_t i = 0; i < alternatives; ++i) ranking[i] = AlternativeId{i};
  for (std::size_t i = 0; i + 1 < alternatives; ++i) {
    const std::size_t j = i + rng.below(alternatives - i);
    std::swap(ranking[i], ranking[j]);
  }
  return PreferenceOrder(std::move(ranking));
}

std::vector<PreferenceOrder> generate(const ProfileSpec& spec) {
  std::vector<PreferenceOrder> out;
  if (const auto* uniform = std::get_if<UniformRandom>(&spec)) {
    if (uniform->agents == 0 || uniform->alternatives == 0) {
      throw ConfigError("profile", "uniform profile needs at least one agent and one alternative");
    }
    Xoshiro256StarStar rng(uniform->seed);
    out.reserve(uniform->agents);
    for (std::size_t j = 0; j < uniform->agents; ++j) {
      out.push_back(random_order(uniform->alternatives, rng));
    }
    return out;
  }
  const auto& rankings = std::get<ExplicitProfile>(spec).rankings;
  if (rankings.empty()) throw ConfigError("profile", "explicit profile has no agents");
  for (const auto& ranking : rankings) {
    if (ranking.size() != rankings.front().size()) {
      throw ConfigError("profile", "rankings differ in length");
    }
    out.push_back(PreferenceOrder::from_indices(ranking));
  }
  return out;
}

PreferenceOrder order_from_labels(const std::vector<std::string>& ranking,
                                  const std::vector<std::string>& labels) {
  if (ranking.size() != labels.size()) {
    throw ConfigError("ranking", "ranks " + std::to_string(ranking.size()) + " of " +
                                     std::to_string(labels.size()) + " alternatives");
  }
  std::vector<AlternativeId> ids;
  std::set<std::string> seen;
  for (const auto& label : ranking) {
    const auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw ConfigError("ranking", "unknown alternative '" + label + "'");
    if (!seen.insert(label).second) {
      throw ConfigError("ranking", "alternative '" + label + "' ranked twice");
    }
    ids.push_back(AlternativeId{static_cast<std::uint32_t>(it - labels.begin())});
  }
  return PreferenceOrder(std::move(ids));
}

namespace {

void reject_unknown(const Json& object, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& [key, value] : object.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ConfigError(where, "unknown field '" + key + "'");
    }
  }
}

}  // namespace

LabeledProfile profile_from_json(const Json& doc, const std::vector<std::string>& labels) {
  if (!doc.is_object()) throw ConfigError("profile", "expected an object");
  reject_unknown(doc, {"alternatives", "agents"}, "profile");

  LabeledProfile profile;
  profile.labels = labels;
  if (doc.contains("alternatives")) {
    const auto& alts = doc.at("alternatives");
    if (!alts.is_array()) throw ConfigError("profile.alternatives", "expected a list of labels");
    std::vector<std::string> listed;
    for (const auto& a : alts) {
      if (!a.is_string()) throw ConfigError("profile.alternatives", "labels must be strings");
      listed.push_back(a.get<std::string>());
    }
    if (!labels.empty() && listed != labels) {
      throw ConfigError("profile.alternatives", "does not match the configured alternatives");
    }
    profile.labels = std::move(listed);
  }
  if (profile.labels.empty()) throw ConfigError("profile.alternatives", "no alternatives given");
  if (!doc.contains("agents") || !doc.at("agents").is_array() || doc.at("agents").empty()) {
    throw ConfigError("profile.agents", "expected a non-empty list of agents");
  }
  std::size_t index = 0;
  for (const auto& agent : doc.at("agents")) {
    ++index;
    const std::string where = "profile.agents[" + std::to_string(index) + "]";
    if (!agent.is_object()) throw ConfigError(where, "expected an object");
    reject_unknown(agent, {"ranking", "weight"}, where);
    if (!agent.contains("ranking") || !agent.at("ranking").is_array()) {
      throw ConfigError(where + ".ranking", "expected a list of labels");
    }
    std::vector<std::string> ranking;
    for (const auto& label : agent.at("ranking")) {
      if (!label.is_string()) throw ConfigError(where + ".ranking", "labels must be strings");
      ranking.push_back(label.get<std::string>());
    }
    std::uint64_t weight = 1;
    if (agent.contains("weight")) {
      const auto& w = agent.at("weight");
      if (!w.is_number_integer() || w.get<std::int64_t>() < 1) {
        throw ConfigError(where + ".weight", "must be an integer >= 1");
      }
      weight = w.get<std::uint64_t>();
    }
    try {
      profile.orders.push_back(order_from_labels(ranking, profile.labels));
    } catch (const ConfigError& e) {
      throw ConfigError(where + "." + e.field(), e.detail());
    }
    profile.weights.emplace_back(weight);
  }
  return profile;
}

LabeledProfile load_profile(const std::filesystem::path& path, const std::vector<std::string>& labels) {
  std::ifstream in(path);
  if (!in) throw ConfigError("profile", "cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("profile", path.string() + ": " + e.what());
  }
  return profile_from_json(doc, labels);
}

}  // namespace mvote
