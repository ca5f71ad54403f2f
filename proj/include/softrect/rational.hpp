// Copyright 2026 The softrect Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace softrect {

// Exact arithmetic type used for every geometric quantity. Values are always
// kept in canonical (lowest-terms, positive denominator) form.
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" (q > 0). Throws softrect::Error on bad input.
Rational parse_rational(std::string_view text);

// Parses a decimal literal such as "0.70710678118654757" or "1e-3" exactly.
Rational parse_decimal(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& value);

// Shortest-round-trip-free rendering with 17 significant digits.
std::string to_decimal(const Rational& value, int significant_digits = 17);

inline double to_double(const Rational& value) { return value.get_d(); }

inline Rational make_rational(long numerator, long denominator = 1) {
  Rational r(numerator, denominator);
  r.canonicalize();
  return r;
}

// Largest integer not above sqrt(value) for non-negative value.
long long isqrt_floor(long long value);

}  // namespace softrect
