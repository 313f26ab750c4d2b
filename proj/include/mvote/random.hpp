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

// Pinned pseudo-random generation. Nothing here depends on the standard
// library's distributions, whose output is implementation-defined; the same
// seed gives the same numbers on every platform.
//
// Generator: xoshiro256** 1.0 (Blackman & Vigna), state filled by
// splitmix64. Bounded integers: Lemire's multiply-shift with rejection,
// which is exactly uniform.

#ifndef MVOTE_RANDOM_HPP_
#define MVOTE_RANDOM_HPP_

#include <array>
#include <cstdint>
#include <limits>

namespace mvote {

inline constexpr const char* kGeneratorName = "xoshiro256**-1.0/splitmix64/lemire-v1";

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// One splitmix64 output step applied to `x`; a good 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) { return SplitMix64(x).next(); }

// Identifies the random stream of one trial. Streams for different
// trial indices are independent of each other and of generation order.
struct Seed {
  std::uint64_t master = 0;
  std::uint64_t trial_index = 0;
  bool operator==(const Seed&) const = default;
};

class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256StarStar(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }
  explicit constexpr Xoshiro256StarStar(const Seed& seed)
      : Xoshiro256StarStar(mix64(seed.master) ^ mix64(mix64(seed.trial_index) + 0x632be59bd9b4e019ULL)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform integer in [0, bound). bound must be positive.
  constexpr std::uint64_t below(std::uint64_t bound) {
    __uint128_t product = static_cast<__uint128_t>((*this)()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<__uint128_t>((*this)()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

}  // namespace mvote

#endif  // MVOTE_RANDOM_HPP_
