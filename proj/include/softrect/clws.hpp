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

// Exact minimization of the perimeter sum.
//
// Once rectangles are sorted by non-decreasing area some optimal partition
// uses runs of consecutive rectangles as layers, so the problem becomes a
// least-weight subsequence problem over break positions 0 = l_0 < ... < l_k = n
// with the weight of a run (i, j] equal to the perimeter sum of rectangles
// i+1..j placed in one layer. That weight satisfies the concave quadrangle
// inequality, which the candidate-stack solver below relies on.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "softrect/core.hpp"

namespace softrect {

// Sorted view of an instance's areas.
struct PrefixAreas {
  std::vector<Rational> sorted_areas;  // non-decreasing
  std::vector<Rational> prefix;        // prefix[0] = 0, size n + 1
  std::vector<int> perm;               // sorted position -> original index

  std::size_t size() const { return sorted_areas.size(); }
};

// Stable sort by area, so equal areas keep their input order.
PrefixAreas make_prefix_areas(const Instance& instance);

// Strictly increasing, starts at 0, ends at n.
using Breakpoints = std::vector<int>;

template <class Value>
struct ClwsSolution {
  Breakpoints breakpoints;
  Value value{};
};

// 2 (L1 + (j - i) / L1 * (P[j] - P[i])): the perimeter sum of sorted
// rectangles i+1..j sharing one layer.
Rational weight(const PrefixAreas& prefix, const Rational& length, int i, int j);

namespace detail {

void require_positive_size(int n);

template <class Value>
Breakpoints backtrack(const std::vector<int>& predecessor, int n) {
  Breakpoints out;
  for (int j = n; j > 0; j = predecessor[j]) out.push_back(j);
  out.push_back(0);
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace detail

// O(n^2) reference: f(j) = min_{i<j} f(i) + w(i, j), smallest i on ties.
// Valid for arbitrary weights.
template <class WeightFn>
auto solve_clws_quadratic(int n, WeightFn&& w)
    -> ClwsSolution<std::decay_t<std::invoke_result_t<WeightFn&, int, int>>> {
  using Value = std::decay_t<std::invoke_result_t<WeightFn&, int, int>>;
  detail::require_positive_size(n);
  std::vector<Value> best(n + 1);
  std::vector<int> predecessor(n + 1, 0);
  best[0] = Value(0);
  for (int j = 1; j <= n; ++j) {
    best[j] = best[0] + w(0, j);
    for (int i = 1; i < j; ++i) {
      Value candidate = best[i] + w(i, j);
      if (candidate < best[j]) {
        best[j] = std::move(candidate);
        predecessor[j] = i;
      }
    }
  }
  return {detail::backtrack<Value>(predecessor, n), best[n]};
}

// O(n log n) weight evaluations for concave weights.
//
// For concave w a later candidate that is strictly better than an earlier one
// at some position stays strictly better at every later position. The solver
// keeps a deque of (candidate, first position it owns) and finds the takeover
// point of each new candidate by binary search. A candidate only takes over on
// strict improvement, so predecessors (and breakpoints) coincide with
// solve_clws_quadratic's smallest-index tie-breaking.
template <class WeightFn>
auto solve_clws_fast(int n, WeightFn&& w)
    -> ClwsSolution<std::decay_t<std::invoke_result_t<WeightFn&, int, int>>> {
  using Value = std::decay_t<std::invoke_result_t<WeightFn&, int, int>>;
  detail::require_positive_size(n);
  std::vector<Value> best(n + 1);
  std::vector<int> predecessor(n + 1, 0);
  best[0] = Value(0);

  struct Owner {
    int candidate;
    int start;
  };
  std::deque<Owner> owners{{0, 1}};

  for (int j = 1; j <= n; ++j) {
    while (owners.size() > 1 && owners[1].start <= j) owners.pop_front();
    const int i = owners.front().candidate;
    best[j] = best[i] + w(i, j);
    predecessor[j] = i;
    if (j == n) break;

    auto beats = [&](int rival, int pos) {
      return best[j] + w(j, pos) < best[rival] + w(rival, pos);
    };
    while (!owners.empty()) {
      const Owner& back = owners.back();
      if (!beats(back.candidate, std::max(back.start, j + 1))) break;
      owners.pop_back();
    }
    if (owners.empty()) {
      owners.push_back({j, j + 1});
      continue;
    }
    const Owner& back = owners.back();
    int lo = std::max(back.start, j + 1) + 1;  // first position not yet ruled out
    int hi = n + 1;                            // n + 1 means "never"
    while (lo < hi) {
      const int mid = lo + (hi - lo) / 2;
      if (beats(back.candidate, mid)) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    if (lo <= n) owners.push_back({j, lo});
  }
  return {detail::backtrack<Value>(predecessor, n), best[n]};
}

// Documented evaluation budget of solve_clws_fast: at most
// kClwsFastEvalFactor * n * max(1, ceil(log2(n + 1))) weight calls.
// Per step: one evaluation for f(j), two per candidate popped (amortized
// once per candidate), two for the failed pop test and two per bisection
// step, giving at most 5n + 2n ceil(log2(n + 1)) in total.
inline constexpr int kClwsFastEvalFactor = 7;
std::uint64_t clws_fast_eval_budget(int n);

struct PeriSumSolution {
  Partition partition;  // canonical
  Rational value;       // exact perimeter sum
  Breakpoints breakpoints;
};

// Globally optimal perimeter-sum partition in O(n log n).
PeriSumSolution solve_peri_sum(const Instance& instance);

struct ConcavityReport {
  bool passed = true;
  std::uint64_t checked = 0;
  std::optional<std::array<int, 4>> counterexample;  // i0 < i1 < j0 < j1
};

// w(i0,j1) + w(i1,j0) - w(i0,j0) - w(i1,j1) for i0 < i1 < j0 < j1.
Rational concavity_margin(const PrefixAreas& prefix, const Rational& length,
                          int i0, int i1, int j0, int j1);

// Samples random quadruples and checks the strict quadrangle inequality
// exactly. Needs at least four break positions (n >= 3).
ConcavityReport check_concavity(const PrefixAreas& prefix, const Rational& length,
                                std::uint64_t samples, std::uint64_t seed);

}  // namespace softrect
