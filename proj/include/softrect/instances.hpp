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


// Random benchmark instances, the 2-Partition reductions with their source
// oracle, and JSON file formats for instances and partitions.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softrect/core.hpp"

namespace softrect {

enum class InstanceClass { kU, kMU, kMN };

std::string_view class_name(InstanceClass cls);  // "U", "MU", "MN"
std::optional<InstanceClass> parse_class(std::string_view name);

struct GeneratorConfig {
  InstanceClass cls = InstanceClass::kU;
  int n = 1;
  std::uint64_t seed = 0;
};

// How the areas were brought down to L1 * L2.
enum class Adjustment {
  kDistinct,    // excess rectangles chosen without repetition
  kRoundRobin,  // repeated passes once redraws of L1 ran out
  kDivisor,     // no L1 in range could absorb the excess; L1 divides A
};

std::string_view adjustment_name(Adjustment a);

struct GeneratorMeta {
  GeneratorConfig config;
  std::vector<std::int64_t> raw_areas;  // as sampled, before the reduction step
  std::int64_t raw_area = 0;
  int length_draws = 0;
  Adjustment adjustment = Adjustment::kDistinct;
};

struct GeneratedInstance {
  Instance instance;
  GeneratorMeta meta;
};

inline constexpr int kLengthRedraws = 64;
inline constexpr int kMaxArea = 200;

// Deterministic in (class, n, seed). Throws Error(kInvalidArgument) for n < 1.
GeneratedInstance generate(const GeneratorConfig& config);

// A 2-Partition instance: positive integers c_1..c_n.
using TwoPartitionInstance = std::vector<long>;

struct Reduction {
  Instance instance;
  Rational threshold;
};

// L1 = C/2, L2 = 2 c_max, a_i = c_i c_max; threshold 4 c_max on the largest
// perimeter.
Reduction reduce_2partition_to_perimax(const TwoPartitionInstance& c);

// M = 2 (C + 1)^2 / min c; L1 = M + 1/M + C/2, L2 = 2, areas c, M, M, 1/M,
// 1/M; threshold M on the aspect ratio.
Reduction reduce_2partition_to_aspect(const TwoPartitionInstance& c);

inline constexpr long kTwoPartitionGuard = 1'000'000;

// Subset-sum bitset DP. Throws Error(kSizeGuard) when sum(c) exceeds the guard.
bool solve_2partition_dp(const TwoPartitionInstance& c);

inline constexpr int kInstanceFormatVersion = 1;

std::string instance_to_json(const Instance& instance,
                             const std::optional<GeneratorMeta>& meta = {});
// Errors carry distinct codes: kMalformedJson, kMissingField,
// kUnsupportedVersion, kBadRational, kZeroDenominator, kNonPositiveArea,
// kAreaSumMismatch.
Instance instance_from_json(std::string_view text);

// Writes to a temporary sibling and renames it into place.
void write_instance(const Instance& instance, const std::filesystem::path& path,
                    const std::optional<GeneratorMeta>& meta = {});
Instance read_instance(const std::filesystem::path& path);

// JSON array of arrays of 1-based indices, canonical order.
std::string partition_to_json(const Partition& partition);
Partition partition_from_json(std::string_view text);
Partition read_partition(const std::filesystem::path& path);
void write_partition(const Partition& partition, const std::filesystem::path& path);

TwoPartitionInstance two_partition_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file_atomic(const std::filesystem::path& path, std::string_view text);

}  // namespace softrect
