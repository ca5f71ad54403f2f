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

#include "softrect/rational.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "softrect/error.hpp"

namespace softrect {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidInstance: return "invalid-instance";
    case ErrorCode::kInvalidPartition: return "invalid-partition";
    case ErrorCode::kMalformedJson: return "malformed-json";
    case ErrorCode::kMissingField: return "missing-field";
    case ErrorCode::kUnsupportedVersion: return "unsupported-version";
    case ErrorCode::kBadRational: return "bad-rational";
    case ErrorCode::kZeroDenominator: return "zero-denominator";
    case ErrorCode::kNonPositiveArea: return "non-positive-area";
    case ErrorCode::kAreaSumMismatch: return "area-sum mismatch";
    case ErrorCode::kSizeGuard: return "size-guard";
    case ErrorCode::kModelError: return "model-error";
    case ErrorCode::kIoError: return "io-error";
  }
  return "unknown";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_integer_literal(num)) {
    throw Error(ErrorCode::kBadRational,
                fmt::format("not a rational: \"{}\"", text));
  }
  Rational result;
  if (slash == std::string_view::npos) {
    result = Rational(parse_integer(num));
  } else {
    const std::string_view den = text.substr(slash + 1);
    if (!is_integer_literal(den) || den.front() == '-') {
      throw Error(ErrorCode::kBadRational,
                  fmt::format("not a rational: \"{}\"", text));
    }
    mpz_class q = parse_integer(den);
    if (q == 0) {
      throw Error(ErrorCode::kZeroDenominator,
                  fmt::format("zero denominator in \"{}\"", text));
    }
    result = Rational(parse_integer(num), q);
  }
  result.canonicalize();
  return result;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  const auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    const std::string_view exp_text = s.substr(epos + 1);
    if (!is_integer_literal(exp_text)) {
      throw Error(ErrorCode::kBadRational,
                  fmt::format("not a decimal: \"{}\"", text));
    }
    exponent = std::stol(std::string(exp_text));
    s = s.substr(0, epos);
  }
  std::string digits;
  bool seen_point = false;
  for (char c : s) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) --exponent;
    } else {
      throw Error(ErrorCode::kBadRational,
                  fmt::format("not a decimal: \"{}\"", text));
    }
  }
  if (digits.empty()) {
    throw Error(ErrorCode::kBadRational,
                fmt::format("not a decimal: \"{}\"", text));
  }
  mpz_class mantissa(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational result = exponent >= 0 ? Rational(mantissa * scale)
                                  : Rational(mantissa, scale);
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal(const Rational& value, int significant_digits) {
  if (value.get_den() == 1 && abs(value.get_num()) < mpz_class("100000000000000000")) {
    return value.get_num().get_str();
  }
  if (value == 0) return "0";
  // Correctly rounded (half to even) to the requested significant digits.
  const Rational magnitude = abs(value);
  long exponent = static_cast<long>(std::floor(std::log10(magnitude.get_d())));
  mpz_class ten_pow;
  auto scaled = [&](long e) {
    const long shift = significant_digits - 1 - e;
    mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    return shift >= 0 ? Rational(magnitude * ten_pow) : Rational(magnitude / ten_pow);
  };
  mpz_class lower_limit, upper_limit;
  mpz_ui_pow_ui(lower_limit.get_mpz_t(), 10, significant_digits - 1);
  mpz_ui_pow_ui(upper_limit.get_mpz_t(), 10, significant_digits);
  Rational x = scaled(exponent);
  // log10 of a double can be off by one near powers of ten.
  while (x >= Rational(upper_limit)) x = scaled(++exponent);
  while (x < Rational(lower_limit)) x = scaled(--exponent);
  mpz_class digits;
  mpz_fdiv_q(digits.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  const Rational fraction = x - Rational(digits);
  if (fraction > Rational(1, 2) || (fraction == Rational(1, 2) && mpz_odd_p(digits.get_mpz_t()))) {
    ++digits;
  }
  if (digits == upper_limit) {
    digits = lower_limit;
    ++exponent;
  }
  std::string text = digits.get_str();
  while (text.size() > 1 && text.back() == '0') text.pop_back();
  std::string out = value < 0 ? "-" : "";
  if (exponent < -5 || exponent >= significant_digits) {
    out += text.substr(0, 1);
    if (text.size() > 1) out += "." + text.substr(1);
    out += fmt::format("e{}{:02d}", exponent < 0 ? '-' : '+', std::labs(exponent));
  } else if (exponent < 0) {
    out += "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + text;
  } else if (static_cast<long>(text.size()) <= exponent + 1) {
    out += text + std::string(static_cast<std::size_t>(exponent + 1 - text.size()), '0');
  } else {
    out += text.substr(0, exponent + 1) + "." + text.substr(exponent + 1);
  }
  return out;
}

long long isqrt_floor(long long value) {
  if (value < 0) throw Error(ErrorCode::kInvalidArgument, "isqrt of negative");
  auto r = static_cast<long long>(std::sqrt(static_cast<long double>(value)));
  while (r > 0 && r * r > value) --r;
  while ((r + 1) * (r + 1) <= value) ++r;
  return r;
}

}  // namespace softrect
