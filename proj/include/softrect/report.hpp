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


// Benchmark rows in CSV form, cross-objective ratio tables and SVG drawings
// of layouts.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softrect/core.hpp"
#include "softrect/exact.hpp"

namespace softrect {

// Solver identifiers accepted by run_bench.
inline constexpr std::string_view kSolverClws = "clws";
inline constexpr std::string_view kSolverPeriMaxBb = "peri-max-bb";
inline constexpr std::string_view kSolverAspectBb = "aspect-bb";
inline constexpr std::string_view kSolverAspectBinarySearch = "aspect-binsearch";

std::vector<std::string_view> bench_solvers();

struct BenchRow {
  std::string name;
  std::size_t n = 0;
  std::string solver;
  std::uint64_t nodes = 0;
  double time_s = 0.0;  // the limit itself when it was hit
  std::optional<double> lb;
  std::optional<double> ub;
  std::optional<int> iters;  // bisection steps, binary search only
  std::string status;        // optimal | time-limit | error

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

inline constexpr std::string_view kBenchCsvHeader = "name,n,solver,nodes,time_s,lb,ub,iters,status";

// Runs one solver on one instance; failures become status "error".
BenchRow run_solver(const Instance& instance, std::string_view solver, double time_limit);

// One row per (instance, solver) in input order, using up to `jobs` threads.
// Throws Error(kInvalidArgument) for an unknown solver id.
std::vector<BenchRow> run_bench(const std::vector<Instance>& instances,
                                const std::vector<std::string>& solvers, double time_limit,
                                int jobs = 1);

std::string bench_to_csv(const std::vector<BenchRow>& rows);
std::vector<BenchRow> bench_from_csv(std::string_view text);

// ceil(log2((up - 1) / gap)): the step count of an uninterrupted bisection
// from [1, up].
int expected_bisection_steps(double initial_up, double gap = kBinarySearchGap);

struct RatioCell {
  ObjectiveKind solved_as = ObjectiveKind::kPeriSum;
  ObjectiveKind evaluated_as = ObjectiveKind::kPeriSum;
  Rational ratio;  // Phi_y(s*_x) / Phi_y(s*_y)
};

inline constexpr ObjectiveKind kCrossObjectives[3] = {
    ObjectiveKind::kPeriSum, ObjectiveKind::kPeriMax, ObjectiveKind::kAspectRatio};

// table[x][y]: the optimum for objective x evaluated under objective y,
// relative to the optimum for y.
using CrossTable = std::array<std::array<RatioCell, 3>, 3>;

CrossTable cross_eval(const Instance& instance, const std::array<Partition, 3>& optima);

// Ratios to 6 significant digits, one row per solved-as objective.
std::string format_cross_table(const CrossTable& table);

struct SvgOptions {
  double width_px = 480.0;
  bool labels = true;
};

std::string render_svg(const Layout& layout, const SvgOptions& options = {});

}  // namespace softrect
