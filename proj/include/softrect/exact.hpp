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

// Exact solvers for the largest-perimeter and largest-aspect-ratio objectives,
// plus a brute-force oracle over all set partitions.
//
// All tree searches share one branching scheme: rectangles are taken in
// non-increasing area order (ties by index) and each one either joins an
// already open layer or opens the next layer. Every set partition is reached
// exactly once, which is the same symmetry reduction the MIP cuts perform.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "softrect/core.hpp"

namespace softrect {

inline constexpr std::size_t kBruteForceGuard = 12;
inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kBinarySearchGap = 0.01;
inline constexpr double kNoTimeLimit = std::numeric_limits<double>::infinity();

enum class SearchStatus { kOptimal, kTimeLimit, kInfeasible };

std::string_view status_name(SearchStatus status);

struct SearchStats {
  std::uint64_t nodes = 0;
  double elapsed = 0.0;  // seconds
  double bound_lb = 0.0;
  double bound_ub = std::numeric_limits<double>::infinity();
  SearchStatus status = SearchStatus::kOptimal;
};

// Calls visit(rgs) for every restricted growth string of length n, i.e. every
// set partition of {0..n-1} (rgs[i] is the block of element i). Returns the
// number of strings visited.
template <class Visit>
std::uint64_t for_each_restricted_growth_string(int n, Visit&& visit) {
  if (n <= 0) return 0;
  std::vector<int> rgs(n, 0);
  std::vector<int> prefix_max(n, 0);  // max of rgs[0..i]
  std::uint64_t count = 0;
  while (true) {
    visit(static_cast<const std::vector<int>&>(rgs));
    ++count;
    int i = n - 1;
    while (i > 0 && rgs[i] > prefix_max[i - 1]) --i;
    if (i == 0) return count;
    ++rgs[i];
    prefix_max[i] = std::max(prefix_max[i - 1], rgs[i]);
    for (int t = i + 1; t < n; ++t) {
      rgs[t] = 0;
      prefix_max[t] = prefix_max[i];
    }
  }
}

Partition partition_from_rgs(const std::vector<int>& rgs);

struct ExactSolution {
  Partition partition;  // canonical
  ObjectiveValue value;
};

// Enumerates every set partition and returns the minimizer; ties go to the
// lexicographically smallest canonical partition. Refuses n > max_size.
ExactSolution brute_force(const Instance& instance, ObjectiveKind kind,
                          std::size_t max_size = kBruteForceGuard);

struct BranchAndBoundResult {
  Partition partition;  // canonical incumbent
  Rational value;       // exact objective of the incumbent
  SearchStats stats;
};

// Minimizes the largest perimeter. The incumbent starts from `initial`, or
// from the optimal perimeter-sum partition when absent.
BranchAndBoundResult solve_peri_max_bb(const Instance& instance,
                                       double time_limit = kNoTimeLimit,
                                       std::optional<Partition> initial = {});

// Minimizes the largest aspect ratio directly.
BranchAndBoundResult solve_aspect_exact_bb(const Instance& instance,
                                           double time_limit = kNoTimeLimit,
                                           std::optional<Partition> initial = {});

// Admissible layer heights for one rectangle.
struct HeightInterval {
  double lo = 0.0;
  double hi = 0.0;
  int rect = -1;
};

// Heights h with 2 (h + a / h) <= phi; nullopt when phi < 4 sqrt(a).
std::optional<HeightInterval> height_interval_perimeter(const Rational& area,
                                                        double phi, int rect = -1);

// Heights h with max(a / h^2, h^2 / a) <= phi, i.e. [sqrt(a/phi), sqrt(a phi)].
HeightInterval height_interval_aspect(const Rational& area, double phi,
                                      int rect = -1);

std::vector<HeightInterval> aspect_intervals(const Instance& instance, double phi);
std::vector<HeightInterval> perimeter_intervals(const Instance& instance,
                                                double phi);

struct FeasibilityResult {
  std::optional<Partition> witness;  // canonical
  std::uint64_t nodes = 0;
  bool timed_out = false;
};

// Searches for a partition whose every layer height lies in the intersection
// of its members' intervals (additive tolerance). A missing interval entry for
// any rectangle (perimeter intervals can be empty) makes the answer
// infeasible.
FeasibilityResult feasibility_decision(
    const Instance& instance, const std::vector<std::optional<HeightInterval>>& intervals,
    double tolerance = kFeasibilityTolerance, double time_limit = kNoTimeLimit);

FeasibilityResult feasibility_decision(const Instance& instance,
                                       const std::vector<HeightInterval>& intervals,
                                       double tolerance = kFeasibilityTolerance,
                                       double time_limit = kNoTimeLimit);

struct BinarySearchStep {
  double phi_mid = 0.0;
  bool feasible = false;
  double phi_low = 0.0;  // after the step
  double phi_up = 0.0;   // after the step
};

struct BinarySearchTrace {
  double initial_up = 0.0;
  std::vector<BinarySearchStep> iterations;
  double phi_low = 1.0;
  double phi_up = 1.0;
  Partition incumbent;
};

struct AspectSearchResult {
  Partition partition;  // canonical incumbent
  Rational value;       // exact aspect ratio of the incumbent
  BinarySearchTrace trace;
  SearchStats stats;
};

// Bisection on the aspect-ratio bound, starting from [1, aspect of the optimal
// perimeter-sum partition] and stopping once the gap drops below 0.01.
AspectSearchResult solve_aspect_binary_search(const Instance& instance,
                                              double time_limit = kNoTimeLimit,
                                              double tolerance = kFeasibilityTolerance);

}  // namespace softrect
