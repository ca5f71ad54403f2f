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

#include "softrect/clws.hpp"

#include <bit>
#include <numeric>

#include <fmt/format.h>

#include "softrect/random.hpp"

namespace softrect {

namespace detail {

void require_positive_size(int n) {
  if (n <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "CLWS needs n >= 1");
  }
}

}  // namespace detail

PrefixAreas make_prefix_areas(const Instance& instance) {
  const std::size_t n = instance.size();
  PrefixAreas out;
  out.perm.resize(n);
  std::iota(out.perm.begin(), out.perm.end(), 0);
  std::stable_sort(out.perm.begin(), out.perm.end(), [&](int a, int b) {
    return instance.area(a) < instance.area(b);
  });
  out.sorted_areas.reserve(n);
  out.prefix.reserve(n + 1);
  out.prefix.emplace_back(0);
  for (int idx : out.perm) {
    out.sorted_areas.push_back(instance.area(idx));
    out.prefix.emplace_back(out.prefix.back() + instance.area(idx));
  }
  return out;
}

Rational weight(const PrefixAreas& prefix, const Rational& length, int i, int j) {
  if (i < 0 || j > static_cast<int>(prefix.size()) || i >= j) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("weight needs 0 <= i < j <= n, got ({}, {})", i, j));
  }
  Rational run(static_cast<long>(j - i));
  return 2 * (length + run / length * (prefix.prefix[j] - prefix.prefix[i]));
}

std::uint64_t clws_fast_eval_budget(int n) {
  const auto un = static_cast<std::uint64_t>(n);
  const std::uint64_t log_term =
      std::max<std::uint64_t>(1, std::bit_width(un));  // ceil(log2(n + 1))
  return kClwsFastEvalFactor * un * log_term;
}

namespace {

// Multiplying every run weight by L1 * D * q^2 / 2, where L1 = p / q and D is
// the common denominator of the areas, gives the integer weight
// p^2 D + (j - i) (D P[j] - D P[i]) q^2. The scale is positive and shared by
// every run, so optimal breakpoints and tie-breaking are unchanged.
struct ScaledWeights {
  std::vector<__int128> prefix;  // D * P[j]
  __int128 constant = 0;         // p^2 D
  __int128 run_factor = 0;       // q^2

  __int128 operator()(int i, int j) const {
    return constant + static_cast<__int128>(j - i) * (prefix[j] - prefix[i]) * run_factor;
  }
};

std::optional<ScaledWeights> make_scaled_weights(const PrefixAreas& prefix,
                                                 const Rational& length) {
  mpz_class common = 1;
  for (const Rational& a : prefix.sorted_areas) {
    mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), a.get_den_mpz_t());
  }
  const mpz_class p = length.get_num();
  const mpz_class q = length.get_den();
  const auto n = static_cast<long>(prefix.size());
  const mpz_class total = mpz_class(prefix.prefix.back() * common);
  // Worst case of the accumulated optimum: n runs each at the largest weight.
  const mpz_class bound = mpz_class(n) * (p * p * common + mpz_class(n) * total * q * q);
  const mpz_class limit = mpz_class(1) << 120;
  if (bound >= limit) return std::nullopt;

  auto to_int128 = [](const mpz_class& z) {
    // Values here are below 2^120 and non-negative.
    __int128 out = 0;
    mpz_class rest = z;
    const mpz_class base = mpz_class(1) << 60;
    mpz_class hi = rest / base;
    mpz_class lo = rest % base;
    out = static_cast<__int128>(mpz_get_ui(hi.get_mpz_t())) << 60;
    out += static_cast<__int128>(mpz_get_ui(lo.get_mpz_t()));
    return out;
  };
  ScaledWeights w;
  w.prefix.reserve(prefix.prefix.size());
  for (const Rational& s : prefix.prefix) {
    w.prefix.push_back(to_int128(mpz_class(s * common)));
  }
  w.constant = to_int128(mpz_class(p * p * common));
  w.run_factor = to_int128(mpz_class(q * q));
  return w;
}

}  // namespace

PeriSumSolution solve_peri_sum(const Instance& instance) {
  const PrefixAreas prefix = make_prefix_areas(instance);
  const int n = static_cast<int>(prefix.size());

  Breakpoints breakpoints;
  if (auto scaled = make_scaled_weights(prefix, instance.length())) {
    breakpoints = solve_clws_fast(n, *scaled).breakpoints;
  } else {
    breakpoints = solve_clws_fast(n, [&](int i, int j) {
                    return weight(prefix, instance.length(), i, j);
                  }).breakpoints;
  }

  PeriSumSolution out;
  for (std::size_t t = 0; t + 1 < breakpoints.size(); ++t) {
    Layer layer;
    for (int pos = breakpoints[t]; pos < breakpoints[t + 1]; ++pos) {
      layer.push_back(prefix.perm[pos]);
    }
    out.partition.layers.push_back(std::move(layer));
  }
  out.partition = canonicalize(std::move(out.partition));
  out.value = peri_sum_from_layers(instance, out.partition);
  out.breakpoints = std::move(breakpoints);
  return out;
}

Rational concavity_margin(const PrefixAreas& prefix, const Rational& length,
                          int i0, int i1, int j0, int j1) {
  return weight(prefix, length, i0, j1) + weight(prefix, length, i1, j0) -
         weight(prefix, length, i0, j0) - weight(prefix, length, i1, j1);
}

ConcavityReport check_concavity(const PrefixAreas& prefix, const Rational& length,
                                std::uint64_t samples, std::uint64_t seed) {
  ConcavityReport report;
  if (samples == 0) return report;
  const int n = static_cast<int>(prefix.size());
  if (n < 3) {
    throw Error(ErrorCode::kInvalidArgument,
                "concavity check needs at least three rectangles");
  }
  Rng rng(seed);
  for (std::uint64_t s = 0; s < samples; ++s) {
    // Four distinct positions out of 0..n, sorted.
    std::array<int, 4> q{};
    for (int t = 0; t < 4; ++t) {
      int candidate;
      bool fresh;
      do {
        candidate = static_cast<int>(rng.uniform_int(0, n));
        fresh = std::find(q.begin(), q.begin() + t, candidate) == q.begin() + t;
      } while (!fresh);
      q[t] = candidate;
    }
    std::sort(q.begin(), q.end());
    ++report.checked;
    if (concavity_margin(prefix, length, q[0], q[1], q[2], q[3]) <= 0) {
      report.passed = false;
      report.counterexample = q;
      return report;
    }
  }
  return report;
}

}  // namespace softrect
