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

#include "mvote/core.hpp"

#include <algorithm>
#include <string_view>
#include <utility>

namespace mvote {

VoteWeight::VoteWeight(std::uint64_t votes) : votes_(votes) {
  if (votes == 0) throw ConfigError("weights", "vote weight must be at least 1");
}

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::invalid_argument(field + ": " + message), field_(std::move(field)), detail_(message) {}

AlternativeSet::AlternativeSet(std::size_t universe) : member_(universe, 0) {}

AlternativeSet AlternativeSet::all(std::size_t universe) {
  AlternativeSet set(universe);
  std::fill(set.member_.begin(), set.member_.end(), std::uint8_t{1});
  set.count_ = universe;
  return set;
}

void AlternativeSet::insert(AlternativeId id) {
  if (id.index >= member_.size()) {
    throw PreconditionError("alternative " + std::to_string(id.index) + " outside universe");
  }
  if (member_[id.index] == 0) {
    member_[id.index] = 1;
    ++count_;
  }
}

void AlternativeSet::erase(AlternativeId id) {
  if (contains(id)) {
    member_[id.index] = 0;
    --count_;
  }
}

std::vector<AlternativeId> AlternativeSet::members() const {
  std::vector<AlternativeId> out;
  out.reserve(count_);
  for (std::uint32_t i = 0; i < member_.size(); ++i) {
    if (member_[i] != 0) out.push_back(AlternativeId{i});
  }
  return out;
}

bool AlternativeSet::is_subset_of(const AlternativeSet& other) const {
  for (std::uint32_t i = 0; i < member_.size(); ++i) {
    if (member_[i] != 0 && !other.contains(AlternativeId{i})) return false;
  }
  return true;
}

bool AlternativeSet::operator==(const AlternativeSet& other) const {
  return count_ == other.count_ && is_subset_of(other);
}

PreferenceOrder::PreferenceOrder(std::vector<AlternativeId> ranking)
    : ranking_(std::move(ranking)) {
  std::vector<std::uint8_t> seen(ranking_.size(), 0);
  for (const AlternativeId id : ranking_) {
    if (id.index >= ranking_.size() || seen[id.index] != 0) {
      throw ConfigError("preferences", "ranking is not a permutation of the alternatives");
    }
    seen[id.index] = 1;
  }
}

PreferenceOrder PreferenceOrder::from_indices(const std::vector<std::uint32_t>& ranking) {
  std::vector<AlternativeId> ids;
  ids.reserve(ranking.size());
  for (const auto i : ranking) ids.push_back(AlternativeId{i});
  return PreferenceOrder(std::move(ids));
}

std::uint64_t Tally::at(AlternativeId id) const {
  const auto it = votes.find(id);
  if (it == votes.end()) throw PreconditionError("alternative not in tally");
  return it->second;
}

std::uint64_t Tally::total() const {
  std::uint64_t sum = 0;
  for (const auto& [id, count] : votes) sum += count;
  return sum;
}

GameConfig::GameConfig(std::vector<std::string> labels, std::vector<VoteWeight> weights,
                       std::vector<PreferenceOrder> preferences, ThresholdMap initial_thresholds)
    : labels_(std::move(labels)),
      weights_(std::move(weights)),
      preferences_(std::move(preferences)),
      initial_thresholds_(std::move(initial_thresholds)) {
  const std::size_t m = labels_.size();
  if (m == 0) throw ConfigError("alternatives", "at least one alternative is required");
  std::vector<std::string_view> sorted(labels_.begin(), labels_.end());
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front().empty()) throw ConfigError("alternatives", "empty label");
  if (const auto dup = std::adjacent_find(sorted.begin(), sorted.end()); dup != sorted.end()) {
    throw ConfigError("alternatives", "duplicate label '" + std::string(*dup) + "'");
  }
  if (weights_.empty()) throw ConfigError("agents", "at least one agent is required");
  if (preferences_.size() != weights_.size()) {
    throw ConfigError("preferences", "expected one ranking per agent (" +
                                         std::to_string(weights_.size()) + "), got " +
                                         std::to_string(preferences_.size()));
  }
  for (std::size_t j = 0; j < preferences_.size(); ++j) {
    if (preferences_[j].size() != m) {
      throw ConfigError("preferences", "ranking of agent " + std::to_string(j + 1) +
                                           " does not cover all " + std::to_string(m) +
                                           " alternatives");
    }
  }
  if (initial_thresholds_.size() != m) {
    throw ConfigError("thresholds", "expected one threshold per alternative");
  }
  for (const auto& [id, f] : initial_thresholds_) {
    if (id.index >= m) throw ConfigError("thresholds", "threshold for unknown alternative");
    if (f < 0) throw ConfigError("thresholds", "threshold of " + labels_[id.index] + " is negative");
  }
}

std::uint64_t GameConfig::total_votes() const { return mvote::total_votes(weights_); }

bool GameConfig::trivially_all_eliminated() const {
  const std::uint64_t total = total_votes();
  for (const auto& [id, f] : initial_thresholds_) {
    if (f <= from_count(total)) return false;
  }
  return true;
}

std::vector<std::string> default_labels(std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) labels.push_back("x" + std::to_string(i));
  return labels;
}

ThresholdMap proportional_thresholds(std::size_t agents, std::size_t alternatives) {
  if (alternatives == 0) throw PreconditionError("no alternatives");
  Rational f = from_count(2 * agents) / from_count(alternatives);
  ThresholdMap thresholds;
  for (std::uint32_t i = 0; i < alternatives; ++i) thresholds.emplace_hint(thresholds.end(), AlternativeId{i}, f);
  return thresholds;
}

Rational threshold_mass(const ThresholdMap& thresholds) {
  Rational sum = 0;
  for (const auto& [id, f] : thresholds) sum += f;
  return sum;
}

std::uint64_t total_votes(std::span<const VoteWeight> weights) {
  std::uint64_t sum = 0;
  for (const auto& w : weights) sum += w.votes();
  return sum;
}

AlternativeId sincere_choice(const PreferenceOrder& prefs, const AlternativeSet& live) {
  if (live.empty()) throw PreconditionError("sincere_choice: no live alternative");
  for (const AlternativeId id : prefs.ranking()) {
    if (live.contains(id)) return id;
  }
  throw PreconditionError("sincere_choice: live set is not a subset of the ranking");
}

Profile sincere_profile(std::span<const PreferenceOrder> prefs, const AlternativeSet& live) {
  Profile profile;
  profile.reserve(prefs.size());
  for (const auto& p : prefs) profile.push_back(sincere_choice(p, live));
  return profile;
}

Tally tally(std::span<const AlternativeId> profile, std::span<const VoteWeight> weights,
            const AlternativeSet& live) {
  if (profile.size() != weights.size()) {
    throw PreconditionError("tally: profile and weights differ in length");
  }
  std::vector<std::uint64_t> dense(live.universe(), 0);
  for (std::size_t j = 0; j < profile.size(); ++j) {
    if (!live.contains(profile[j])) {
      throw PreconditionError("tally: agent " + std::to_string(j + 1) +
                              " voted for an eliminated alternative");
    }
    dense[profile[j].index] += weights[j].votes();
  }
  Tally result;
  for (const AlternativeId id : live.members()) {
    result.votes.emplace_hint(result.votes.end(), id, dense[id.index]);
  }
  return result;
}

namespace {

std::size_t universe_of(const Tally& counts) {
  return counts.votes.empty() ? 0 : counts.votes.rbegin()->first.index + 1;
}

}  // namespace

Elimination eliminate(const Tally& counts, const ThresholdMap& thresholds) {
  if (counts.votes.size() != thresholds.size()) {
    throw PreconditionError("eliminate: tally and thresholds cover different alternatives");
  }
  const std::size_t universe = universe_of(counts);
  Elimination out{AlternativeSet(universe), AlternativeSet(universe)};
  auto f = thresholds.begin();
  for (const auto& [id, r] : counts.votes) {
    if (f->first != id) {
      throw PreconditionError("eliminate: tally and thresholds cover different alternatives");
    }
    // Eliminated iff f > r.
    if (cmp(f->second, r) > 0) {
      out.eliminated.insert(id);
    } else {
      out.survivors.insert(id);
    }
    ++f;
  }
  return out;
}

Popularity popularity(const Tally& counts, const ThresholdMap& thresholds) {
  Popularity a;
  for (const auto& [id, f] : thresholds) {
    a.emplace_hint(a.end(), id, from_count(counts.at(id)) - f);
  }
  return a;
}

namespace {

struct Split {
  Rational mass;            // thresholds of the eliminated alternatives
  Rational popularity_sum;  // over survivors
};

Split measure(const Tally& counts, const ThresholdMap& prev, const AlternativeSet& survivors,
              const AlternativeSet& eliminated) {
  if (survivors.empty()) throw PreconditionError("update_thresholds: no survivors");
  if (survivors.size() + eliminated.size() != prev.size()) {
    throw PreconditionError("update_thresholds: survivors and eliminated must partition the live set");
  }
  Split split;
  for (const auto& [id, f] : prev) {
    if (survivors.contains(id)) {
      Rational a = from_count(counts.at(id)) - f;
      if (sgn(a) < 0) throw PreconditionError("update_thresholds: survivor below its threshold");
      split.popularity_sum += a;
    } else if (eliminated.contains(id)) {
      split.mass += f;
    } else {
      throw PreconditionError("update_thresholds: alternative in neither set");
    }
  }
  return split;
}

}  // namespace

Redistribution redistribution_kind(const Tally& counts, const ThresholdMap& prev,
                                   const AlternativeSet& survivors,
                                   const AlternativeSet& eliminated) {
  const Split split = measure(counts, prev, survivors, eliminated);
  if (eliminated.empty()) return Redistribution::kNone;
  if (survivors.size() == 1) return Redistribution::kSingleSurvivor;
  if (sgn(split.popularity_sum) == 0) return Redistribution::kEqualSplit;
  return Redistribution::kProportional;
}

ThresholdMap update_thresholds(const ThresholdMap& prev, const Tally& counts,
                               const AlternativeSet& survivors,
                               const AlternativeSet& eliminated) {
  const Split split = measure(counts, prev, survivors, eliminated);
  if (eliminated.empty()) return prev;

  ThresholdMap next;
  if (survivors.size() == 1) {
    const AlternativeId only = survivors.members().front();
    next.emplace(only, prev.at(only) + split.mass);
    return next;
  }
  if (sgn(split.popularity_sum) == 0) {
    const Rational share = split.mass / from_count(survivors.size());
    for (const auto& [id, f] : prev) {
      if (survivors.contains(id)) next.emplace_hint(next.end(), id, f + share);
    }
    return next;
  }
  const Rational per_unit = split.mass / split.popularity_sum;
  for (const auto& [id, f] : prev) {
    if (!survivors.contains(id)) continue;
    const Rational a = from_count(counts.at(id)) - f;
    next.emplace_hint(next.end(), id, f + a * per_unit);
  }
  return next;
}

bool forces_elimination(const ThresholdMap& thresholds, std::span<const VoteWeight> weights) {
  return threshold_mass(thresholds) > from_count(total_votes(weights));
}

}  // namespace mvote
