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

// Published average game lengths for the 2n/m threshold initialisation,
// one vote per agent, uniformly random preferences and 100 games per cell.
// Rows are alternative counts, columns agent counts.

#ifndef MVOTE_REFERENCE_TABLE_HPP_
#define MVOTE_REFERENCE_TABLE_HPP_

#include <array>
#include <cstddef>
#include <optional>

namespace mvote::reference {

inline constexpr std::array<std::size_t, 9> kAgentCounts = {2, 4, 8, 16, 32, 64, 128, 256, 512};
inline constexpr std::array<std::size_t, 9> kAlternativeCounts = {10,  20,  40,   80,  160,
                                                                  320, 640, 1280, 2560};
inline constexpr std::size_t kTrialsPerCell = 100;

// clang-format off
inline constexpr std::array<std::array<double, 9>, 9> kMeanLength = {{
    {2.89, 3.00, 2.66, 2.15, 2.01, 2.00, 2.00, 2.00, 2.00},   // m = 10
    {2.96, 3.00, 3.00, 2.99, 2.49, 2.20, 2.01, 2.00, 2.00},   // m = 20
    {3.00, 3.00, 3.00, 3.00, 3.12, 2.90, 2.49, 2.16, 2.00},   // m = 40
    {3.00, 3.00, 3.00, 3.00, 3.00, 3.37, 3.03, 3.05, 2.37},   // m = 80
    {2.98, 3.00, 3.00, 3.00, 3.00, 3.00, 4.02, 3.09, 3.29},   // m = 160
    {2.99, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 4.34, 3.10},   // m = 320
    {3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 4.52},   // m = 640
    {3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00},   // m = 1280
    {3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00, 3.00},   // m = 2560
}};
// clang-format on

inline std::optional<double> mean_length(std::size_t alternatives, std::size_t agents) {
  for (std::size_t r = 0; r < kAlternativeCounts.size(); ++r) {
    if (kAlternativeCounts[r] != alternatives) continue;
    for (std::size_t c = 0; c < kAgentCounts.size(); ++c) {
      if (kAgentCounts[c] == agents) return kMeanLength[r][c];
    }
  }
  return std::nullopt;
}

}  // namespace mvote::reference

#endif  // MVOTE_REFERENCE_TABLE_HPP_
