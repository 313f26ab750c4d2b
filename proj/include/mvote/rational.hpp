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

#ifndef MVOTE_RATIONAL_HPP_
#define MVOTE_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace mvote {

// Arbitrary-precision rational. Thresholds and popularities are always held
// in this type so that sums are conserved bit for bit.
using Rational = mpq_class;

inline Rational from_count(std::uint64_t n) {
  return Rational(mpz_class(static_cast<unsigned long>(n)));
}

// Parses "7", "-3", "0.45", "2/5" or " 12 / 8 " into a canonical rational.
// Throws std::invalid_argument on anything else (including a zero denominator).
Rational parse_rational(std::string_view text);

// Canonical "numerator/denominator" form; the denominator is always present,
// so 2 is rendered as "2/1".
std::string to_fraction_string(const Rational& value);

// Shortest human form: "2", "2/5".
std::string to_display_string(const Rational& value);

}  // namespace mvote

#endif  // MVOTE_RATIONAL_HPP_
