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

#include "mvote/trace_io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace mvote {

std::string to_string(ThresholdRule rule) {
  return rule == ThresholdRule::kUpdating ? "updating" : "static";
}

std::string to_string(LengthConvention convention) {
  return convention == LengthConvention::kRoundsPlayed ? "rounds_played" : "rounds_plus_final";
}

ThresholdRule parse_threshold_rule(const std::string& text) {
  if (text == "updating") return ThresholdRule::kUpdating;
  if (text == "static") return ThresholdRule::kStatic;
  throw ConfigError("threshold_rule", "expected 'updating' or 'static', got '" + text + "'");
}

LengthConvention parse_length_convention(const std::string& text) {
  if (text == "rounds_played") return LengthConvention::kRoundsPlayed;
  if (text == "rounds_plus_final") return LengthConvention::kRoundsPlusFinal;
  throw ConfigError("length_convention",
                    "expected 'rounds_played' or 'rounds_plus_final', got '" + text + "'");
}

Json options_to_json(const EngineOptions& options) {
  Json doc;
  doc["threshold_rule"] = to_string(options.threshold_rule);
  doc["length_convention"] = to_string(options.length_convention);
  doc["max_stages"] = options.max_stages ? Json(*options.max_stages) : Json(nullptr);
  if (options.test_elimination_slack != 0) {
    doc["test_elimination_slack"] = options.test_elimination_slack;
  }
  return doc;
}

EngineOptions options_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("engine", "expected an object");
  EngineOptions options;
  for (const auto& [key, value] : doc.items()) {
    if (key == "threshold_rule") {
      if (!value.is_string()) throw ConfigError("engine.threshold_rule", "expected a string");
      options.threshold_rule = parse_threshold_rule(value.get<std::string>());
    } else if (key == "length_convention") {
      if (!value.is_string()) throw ConfigError("engine.length_convention", "expected a string");
      options.length_convention = parse_length_convention(value.get<std::string>());
    } else if (key == "max_stages") {
      if (value.is_null()) continue;
      if (!value.is_number_unsigned()) throw ConfigError("engine.max_stages", "expected a count");
      options.max_stages = value.get<std::size_t>();
    } else if (key == "test_elimination_slack") {
      if (!value.is_number_unsigned()) {
        throw ConfigError("engine.test_elimination_slack", "expected a count");
      }
      options.test_elimination_slack = value.get<std::uint64_t>();
    } else {
      throw ConfigError("engine", "unknown field '" + key + "'");
    }
  }
  return options;
}

namespace {

Json labels_of(const AlternativeSet& set, const GameConfig& config) {
  Json out = Json::array();
  for (const AlternativeId id : set.members()) out.push_back(config.label(id));
  return out;
}

Json thresholds_to_json(const ThresholdMap& thresholds, const GameConfig& config) {
  Json out = Json::object();
  for (const auto& [id, f] : thresholds) out[config.label(id)] = to_fraction_string(f);
  return out;
}

AlternativeId id_of(const std::string& label, const std::vector<std::string>& labels,
                    const std::string& where) {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw ConfigError(where, "unknown alternative '" + label + "'");
  return AlternativeId{static_cast<std::uint32_t>(it - labels.begin())};
}

Rational threshold_value(const Json& value, const std::string& where) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number_integer()) return parse_rational(std::to_string(value.get<std::int64_t>()));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(where, e.what());
  }
  throw ConfigError(where, "expected an integer, a decimal string or a \"p/q\" string");
}

ThresholdMap thresholds_from_json(const Json& doc, const std::vector<std::string>& labels,
                                  const std::string& where) {
  if (!doc.is_object()) throw ConfigError(where, "expected an object keyed by alternative");
  ThresholdMap out;
  for (const auto& [label, value] : doc.items()) {
    out[id_of(label, labels, where)] = threshold_value(value, where + "." + label);
  }
  return out;
}

AlternativeSet set_from_json(const Json& doc, const std::vector<std::string>& labels,
                             const std::string& where) {
  if (!doc.is_array()) throw ConfigError(where, "expected a list of labels");
  AlternativeSet out(labels.size());
  for (const auto& label : doc) {
    if (!label.is_string()) throw ConfigError(where, "labels must be strings");
    out.insert(id_of(label.get<std::string>(), labels, where));
  }
  return out;
}

const Json& field(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ConfigError(where, std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

}  // namespace

Json config_to_json(const GameConfig& config) {
  Json doc;
  doc["alternatives"] = config.labels();
  Json agents = Json::array();
  for (std::size_t j = 0; j < config.agent_count(); ++j) {
    Json agent;
    agent["weight"] = config.weights()[j].votes();
    Json ranking = Json::array();
    for (const AlternativeId id : config.preferences()[j].ranking()) {
      ranking.push_back(config.label(id));
    }
    agent["ranking"] = std::move(ranking);
    agents.push_back(std::move(agent));
  }
  doc["agents"] = std::move(agents);
  doc["thresholds"] = thresholds_to_json(config.initial_thresholds(), config);
  return doc;
}

GameConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config", "expected an object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "alternatives" && key != "agents" && key != "thresholds") {
      throw ConfigError("config", "unknown field '" + key + "'");
    }
  }
  Json profile_doc;
  profile_doc["alternatives"] = field(doc, "alternatives", "config");
  profile_doc["agents"] = field(doc, "agents", "config");
  LabeledProfile profile = profile_from_json(profile_doc);
  ThresholdMap thresholds =
      thresholds_from_json(field(doc, "thresholds", "config"), profile.labels, "thresholds");
  return GameConfig(profile.labels, std::move(profile.weights), std::move(profile.orders),
                    std::move(thresholds));
}

Json trace_to_json(const GameTrace& trace) {
  const GameConfig& config = trace.config;
  Json doc;
  doc["format"] = kTraceFormat;
  doc["config"] = config_to_json(config);
  doc["options"] = options_to_json(trace.options);
  Json stages = Json::array();
  for (const auto& stage : trace.stages) {
    Json s;
    s["stage"] = stage.stage_index;
    s["live"] = labels_of(stage.live_before, config);
    s["thresholds_before"] = thresholds_to_json(stage.thresholds_before, config);
    Json profile = Json::array();
    for (const AlternativeId choice : stage.profile) profile.push_back(config.label(choice));
    s["profile"] = std::move(profile);
    Json tally = Json::object();
    for (const auto& [id, votes] : stage.tally.votes) tally[config.label(id)] = votes;
    s["tally"] = std::move(tally);
    s["eliminated"] = labels_of(stage.eliminated, config);
    s["thresholds_after"] = thresholds_to_json(stage.thresholds_after, config);
    stages.push_back(std::move(s));
  }
  doc["stages"] = std::move(stages);

  Json outcome;
  if (const auto* w = std::get_if<Winner>(&trace.outcome)) {
    outcome["kind"] = "winner";
    outcome["winner"] = config.label(w->alternative);
  } else if (const auto* nt = std::get_if<NonTerminating>(&trace.outcome)) {
    outcome["kind"] = "non_terminating";
    outcome["at_stage"] = nt->at_stage;
  } else {
    outcome["kind"] = "all_eliminated";
  }
  doc["outcome"] = std::move(outcome);
  doc["rounds_played"] = trace.rounds_played();
  const auto length = trace.length();
  doc["length"] = length ? Json(*length) : Json(nullptr);
  return doc;
}

GameTrace trace_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("trace: expected an object");
  if (field(doc, "format", "trace") != kTraceFormat) {
    throw std::invalid_argument("trace: unsupported format");
  }
  GameConfig config = config_from_json(field(doc, "config", "trace"));
  EngineOptions options = options_from_json(field(doc, "options", "trace"));
  const auto& labels = config.labels();

  std::vector<StageRecord> stages;
  for (const auto& s : field(doc, "stages", "trace")) {
    StageRecord stage;
    stage.stage_index = field(s, "stage", "stage").get<std::size_t>();
    const std::string where = "stage " + std::to_string(stage.stage_index);
    stage.live_before = set_from_json(field(s, "live", where), labels, where + ".live");
    stage.thresholds_before =
        thresholds_from_json(field(s, "thresholds_before", where), labels, where + ".thresholds_before");
    for (const auto& choice : field(s, "profile", where)) {
      stage.profile.push_back(id_of(choice.get<std::string>(), labels, where + ".profile"));
    }
    for (const auto& [label, votes] : field(s, "tally", where).items()) {
      stage.tally.votes[id_of(label, labels, where + ".tally")] = votes.get<std::uint64_t>();
    }
    stage.eliminated = set_from_json(field(s, "eliminated", where), labels, where + ".eliminated");
    stage.thresholds_after =
        thresholds_from_json(field(s, "thresholds_after", where), labels, where + ".thresholds_after");
    stages.push_back(std::move(stage));
  }

  const Json& o = field(doc, "outcome", "trace");
  const std::string kind = field(o, "kind", "outcome").get<std::string>();
  Outcome outcome;
  if (kind == "winner") {
    outcome = Winner{id_of(field(o, "winner", "outcome").get<std::string>(), labels, "outcome")};
  } else if (kind == "non_terminating") {
    outcome = NonTerminating{field(o, "at_stage", "outcome").get<std::size_t>()};
  } else if (kind == "all_eliminated") {
    outcome = AllEliminated{};
  } else {
    throw std::invalid_argument("trace: unknown outcome '" + kind + "'");
  }

  GameTrace trace{std::move(config), options, std::move(stages), outcome};
  validate_trace(trace);
  return trace;
}

void write_trace(const GameTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << trace_to_json(trace).dump(2) << '\n';
}

GameTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
  return trace_from_json(doc);
}

}  // namespace mvote
