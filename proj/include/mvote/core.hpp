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

// Single-stage model of the elimination vote: who votes for what, how the
// votes are counted, which alternatives fall below their thresholds and how
// the thresholds of eliminated alternatives are handed to the survivors.
//
// Identities are stable for the whole repeated game: an alternative keeps
// the index it had in the first stage. Indices are zero-based; the default
// user-facing labels are one-based ("x1" is index 0).

#ifndef MVOTE_CORE_HPP_
#define MVOTE_CORE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvote/rational.hpp"

namespace mvote {

struct AgentId {
  std::uint32_t index = 0;
  auto operator<=>(const AgentId&) const = default;
};

struct AlternativeId {
  std::uint32_t index = 0;
  auto operator<=>(const AlternativeId&) const = default;
};

// Number of votes an agent casts each stage, all on one alternative.
class VoteWeight {
 public:
  explicit VoteWeight(std::uint64_t votes);
  std::uint64_t votes() const { return votes_; }
  bool operator==(const VoteWeight&) const = default;

 private:
  std::uint64_t votes_;
};

// Raised when an operation is called outside its contract.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when a game configuration is malformed; `field` names the offending
// part of the configuration.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message);
  const std::string& field() const { return field_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string field_;
  std::string detail_;
};

// Subset of the alternatives {0, ..., universe-1}.
class AlternativeSet {
 public:
  AlternativeSet() = default;
  explicit AlternativeSet(std::size_t universe);
  static AlternativeSet all(std::size_t universe);

  void insert(AlternativeId id);
  void erase(AlternativeId id);
  bool contains(AlternativeId id) const {
    return id.index < member_.size() && member_[id.index] != 0;
  }

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::size_t universe() const { return member_.size(); }

  // Members in increasing index order.
  std::vector<AlternativeId> members() const;

  bool is_subset_of(const AlternativeSet& other) const;
  bool operator==(const AlternativeSet& other) const;

 private:
  std::vector<std::uint8_t> member_;
  std::size_t count_ = 0;
};

// Strict total order over every alternative of the first stage, most
// preferred first. Immutable once built.
class PreferenceOrder {
 public:
  // Throws ConfigError unless `ranking` is a permutation of 0..size-1.
  explicit PreferenceOrder(std::vector<AlternativeId> ranking);
  static PreferenceOrder from_indices(const std::vector<std::uint32_t>& ranking);

  std::span<const AlternativeId> ranking() const { return ranking_; }
  std::size_t size() const { return ranking_.size(); }
  bool operator==(const PreferenceOrder&) const = default;

 private:
  std::vector<AlternativeId> ranking_;
};

using ThresholdMap = std::map<AlternativeId, Rational>;

// Choice of every agent at one stage, indexed by AgentId::index.
using Profile = std::vector<AlternativeId>;

// Weighted vote count per live alternative; live alternatives that nobody
// chose are present with zero.
struct Tally {
  std::map<AlternativeId, std::uint64_t> votes;

  std::uint64_t at(AlternativeId id) const;
  std::uint64_t total() const;
  bool operator==(const Tally&) const = default;
};

// Vote surplus r - f of each alternative at a stage.
using Popularity = std::map<AlternativeId, Rational>;

struct Elimination {
  AlternativeSet survivors;
  AlternativeSet eliminated;
};

// How update_thresholds distributed the eliminated mass.
enum class Redistribution {
  kNone,            // nothing eliminated, thresholds unchanged
  kSingleSurvivor,  // the one survivor absorbs everything
  kProportional,    // shares proportional to popularity
  kEqualSplit,      // popularity sums to zero, survivors share equally
};

class GameConfig {
 public:
  // Validates sizes, permutations, labels and threshold keys; throws
  // ConfigError naming the field at fault.
  GameConfig(std::vector<std::string> labels, std::vector<VoteWeight> weights,
             std::vector<PreferenceOrder> preferences,
             ThresholdMap initial_thresholds);

  std::size_t agent_count() const { return weights_.size(); }
  std::size_t alternative_count() const { return labels_.size(); }

  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(AlternativeId id) const { return labels_.at(id.index); }
  const std::vector<VoteWeight>& weights() const { return weights_; }
  const std::vector<PreferenceOrder>& preferences() const { return preferences_; }
  const ThresholdMap& initial_thresholds() const { return initial_thresholds_; }

  std::uint64_t total_votes() const;

  // True when every threshold exceeds the total number of votes, so the
  // first stage necessarily eliminates everything.
  bool trivially_all_eliminated() const;

  bool operator==(const GameConfig&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<VoteWeight> weights_;
  std::vector<PreferenceOrder> preferences_;
  ThresholdMap initial_thresholds_;
};

// "x1", ..., "xm".
std::vector<std::string> default_labels(std::size_t count);

// Thresholds 2n/m for every alternative.
ThresholdMap proportional_thresholds(std::size_t agents, std::size_t alternatives);

Rational threshold_mass(const ThresholdMap& thresholds);
std::uint64_t total_votes(std::span<const VoteWeight> weights);

// Highest-ranked alternative that is still live.
AlternativeId sincere_choice(const PreferenceOrder& prefs, const AlternativeSet& live);

Profile sincere_profile(std::span<const PreferenceOrder> prefs, const AlternativeSet& live);

// Each agent's full weight goes to its chosen alternative. Throws
// PreconditionError if a choice is not live or sizes disagree.
Tally tally(std::span<const AlternativeId> profile, std::span<const VoteWeight> weights,
            const AlternativeSet& live);

// An alternative survives iff its votes reach its threshold (r >= f); ties
// survive.
Elimination eliminate(const Tally& counts, const ThresholdMap& thresholds);

Popularity popularity(const Tally& counts, const ThresholdMap& thresholds);

Redistribution redistribution_kind(const Tally& counts, const ThresholdMap& prev,
                                   const AlternativeSet& survivors,
                                   const AlternativeSet& eliminated);

// Hands the threshold mass of `eliminated` to `survivors` in proportion to
// their popularity. Returns thresholds for survivors only; their sum equals
// the sum of `prev` exactly. Throws PreconditionError for an empty survivor
// set or a survivor with negative popularity.
ThresholdMap update_thresholds(const ThresholdMap& prev, const Tally& counts,
                               const AlternativeSet& survivors,
                               const AlternativeSet& eliminated);

// Sum of thresholds strictly exceeds the sum of votes. When this holds at a
// stage, at least one alternative must be eliminated there.
bool forces_elimination(const ThresholdMap& thresholds, std::span<const VoteWeight> weights);

}  // namespace mvote

#endif  // MVOTE_CORE_HPP_
