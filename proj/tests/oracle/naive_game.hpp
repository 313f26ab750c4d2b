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

// Test-only reference implementation of the repeated elimination vote.
//
// Written as a literal transcription of the defining sums with per-stage
// re-indexing of the surviving alternatives, in boost::rational<long long>.
// Shares no code with the library: alternatives are plain ints, there is no
// AlternativeSet, no ThresholdMap and no GMP.

#ifndef MVOTE_TESTS_ORACLE_NAIVE_GAME_HPP_
#define MVOTE_TESTS_ORACLE_NAIVE_GAME_HPP_

#include <boost/rational.hpp>

#include <cstddef>
#include <vector>

namespace oracle {

using Q = boost::rational<long long>;

struct NaiveStage {
  std::vector<int> live;       // original alternative numbers, ascending
  std::vector<int> survivors;  // original alternative numbers, ascending
  std::vector<Q> thresholds_after;  // aligned with survivors
};

struct NaiveGame {
  std::vector<NaiveStage> stages;
  bool non_terminating = false;
};

// prefs[j] lists agent j's alternatives (0-based), best first.
inline NaiveGame play_naive(const std::vector<std::vector<int>>& prefs, const std::vector<long long>& votes,
                            const std::vector<Q>& f1, bool updating, int max_stages = 64) {
  const int n = static_cast<int>(prefs.size());
  NaiveGame game;
  std::vector<int> x(f1.size());  // x[i] = original number of stage alternative i
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = static_cast<int>(i);
  std::vector<Q> f = f1;

  for (int k = 1; x.size() >= 2 && k <= max_stages; ++k) {
    const int mk = static_cast<int>(x.size());
    // s_j: agent j's most preferred alternative still in x.
    std::vector<int> s(n);
    for (int j = 0; j < n; ++j) {
      for (int alt : prefs[j]) {
        bool present = false;
        for (int i = 0; i < mk; ++i) present = present || x[i] == alt;
        if (present) {
          s[j] = alt;
          break;
        }
      }
    }
    // r_i = sum_j v_j * delta_i(s_j)
    std::vector<long long> r(mk, 0);
    for (int i = 0; i < mk; ++i) {
      for (int j = 0; j < n; ++j) r[i] += votes[j] * (s[j] == x[i] ? 1 : 0);
    }
    NaiveStage stage;
    stage.live = x;
    std::vector<int> I;  // I[i'] = index at this stage of the i'-th survivor
    for (int i = 0; i < mk; ++i) {
      if (!(f[i] > Q(r[i]))) I.push_back(i);
    }
    for (int i : I) stage.survivors.push_back(x[i]);

    if (static_cast<int>(I.size()) == mk) {
      stage.thresholds_after = f;
      game.stages.push_back(stage);
      game.non_terminating = true;
      return game;
    }
    if (I.empty()) {
      game.stages.push_back(stage);
      return game;
    }

    std::vector<Q> next(I.size());
    if (updating) {
      Q sum_all(0);
      for (int i = 0; i < mk; ++i) sum_all += f[i];
      Q sum_kept(0);
      Q sum_a(0);
      for (int i : I) {
        sum_kept += f[i];
        sum_a += Q(r[i]) - f[i];
      }
      for (std::size_t ip = 0; ip < I.size(); ++ip) {
        const Q a = Q(r[I[ip]]) - f[I[ip]];
        Q share;
        if (I.size() == 1) {
          share = Q(1);
        } else if (sum_a == Q(0)) {
          share = Q(1, static_cast<long long>(I.size()));
        } else {
          share = a / sum_a;
        }
        next[ip] = f[I[ip]] + share * (sum_all - sum_kept);
      }
    } else {
      for (std::size_t ip = 0; ip < I.size(); ++ip) next[ip] = f[I[ip]];
    }
    stage.thresholds_after = next;
    game.stages.push_back(stage);

    std::vector<int> nx;
    for (int i : I) nx.push_back(x[i]);
    x = nx;
    f = next;
  }
  return game;
}

}  // namespace oracle

#endif  // MVOTE_TESTS_ORACLE_NAIVE_GAME_HPP_
