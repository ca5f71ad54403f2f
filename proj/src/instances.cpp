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


#include "softrect/instances.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <system_error>

#include <boost/dynamic_bitset.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "softrect/random.hpp"

namespace softrect {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view class_name(InstanceClass cls) {
  switch (cls) {
    case InstanceClass::kU: return "U";
    case InstanceClass::kMU: return "MU";
    case InstanceClass::kMN: return "MN";
  }
  return "?";
}

std::optional<InstanceClass> parse_class(std::string_view name) {
  for (InstanceClass c : {InstanceClass::kU, InstanceClass::kMU, InstanceClass::kMN}) {
    if (class_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view adjustment_name(Adjustment a) {
  switch (a) {
    case Adjustment::kDistinct: return "distinct";
    case Adjustment::kRoundRobin: return "round-robin";
    case Adjustment::kDivisor: return "divisor";
  }
  return "?";
}

namespace {

std::int64_t draw_area(Rng& rng, InstanceClass cls) {
  switch (cls) {
    case InstanceClass::kU:
      return rng.uniform_int(1, kMaxArea);
    case InstanceClass::kMU: {
      static constexpr std::int64_t kRanges[3][2] = {{1, 10}, {11, 50}, {51, 150}};
      const auto& r = kRanges[rng.uniform_int(0, 2)];
      return rng.uniform_int(r[0], r[1]);
    }
    case InstanceClass::kMN: {
      static constexpr double kModes[3][2] = {{5, 2}, {25, 10}, {125, 50}};
      while (true) {
        const auto& m = kModes[rng.uniform_int(0, 2)];
        const double x = std::round(rng.normal(m[0], m[1]));
        if (x >= 1 && x <= kMaxArea) return static_cast<std::int64_t>(x);
      }
    }
  }
  return 1;
}

// Smallest L with 3 L^2 >= A, i.e. ceil(sqrt(A / 3)).
std::int64_t length_lower(std::int64_t total) {
  std::int64_t l = std::max<std::int64_t>(1, isqrt_floor(total / 3));
  while (l > 1 && 3 * (l - 1) * (l - 1) >= total) --l;
  while (3 * l * l < total) ++l;
  return l;
}

}  // namespace

GeneratedInstance generate(const GeneratorConfig& config) {
  if (config.n < 1) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("n must be at least 1, got {}", config.n));
  }
  Rng rng(config.seed);
  std::vector<std::int64_t> areas(config.n);
  for (auto& a : areas) a = draw_area(rng, config.cls);
  const std::int64_t total = std::accumulate(areas.begin(), areas.end(), std::int64_t{0});

  GeneratorMeta meta;
  meta.config = config;
  meta.raw_areas = areas;
  meta.raw_area = total;
  const std::int64_t lo = length_lower(total);
  const std::int64_t hi = isqrt_floor(3 * total);

  std::vector<int> eligible;
  std::int64_t length = 0;
  std::int64_t excess = 0;
  bool placed = false;
  for (int draw = 0; draw <= kLengthRedraws && !placed; ++draw) {
    length = rng.uniform_int(lo, hi);
    ++meta.length_draws;
    excess = total - length * (total / length);
    eligible.clear();
    for (int i = 0; i < config.n; ++i) {
      if (areas[i] >= 2) eligible.push_back(i);
    }
    if (excess <= static_cast<std::int64_t>(eligible.size())) {
      // Partial Fisher-Yates: the first `excess` slots are a uniform sample.
      for (std::int64_t t = 0; t < excess; ++t) {
        const auto pick = rng.uniform_int(t, static_cast<std::int64_t>(eligible.size()) - 1);
        std::swap(eligible[t], eligible[pick]);
        --areas[eligible[t]];
      }
      placed = true;
    }
  }
  if (!placed && excess <= total - config.n) {
    meta.adjustment = Adjustment::kRoundRobin;
    while (excess > 0) {
      for (int i = 0; i < config.n && excess > 0; ++i) {
        if (areas[i] >= 2) {
          --areas[i];
          --excess;
        }
      }
    }
    placed = true;
  }
  if (!placed) {
    // Every area is (nearly) 1; a divisor of A near sqrt(A) needs no change.
    meta.adjustment = Adjustment::kDivisor;
    length = 1;
    for (std::int64_t d = 1; d * d <= total; ++d) {
      if (total % d == 0) length = d;
    }
  }
  const std::int64_t height = std::accumulate(areas.begin(), areas.end(), std::int64_t{0}) / length;
  std::vector<long> longs(areas.begin(), areas.end());
  std::string name = fmt::format("{}-{}-{}", class_name(config.cls), config.n, config.seed);
  return {Instance::from_integers(length, height, longs, std::move(name)), meta};
}

namespace {

void require_two_partition(const TwoPartitionInstance& c) {
  if (c.empty()) throw Error(ErrorCode::kInvalidArgument, "2-Partition instance is empty");
  for (long v : c) {
    if (v < 1) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("2-Partition values must be positive, got {}", v));
    }
  }
}

std::string describe(const TwoPartitionInstance& c) {
  return fmt::format("{}", fmt::join(c, ","));
}

}  // namespace

Reduction reduce_2partition_to_perimax(const TwoPartitionInstance& c) {
  require_two_partition(c);
  const long cmax = *std::max_element(c.begin(), c.end());
  const Rational total(std::accumulate(c.begin(), c.end(), 0L));
  std::vector<Rational> areas;
  for (long v : c) areas.emplace_back(v * cmax);
  Instance inst(Rational(total / 2), Rational(2 * cmax), std::move(areas),
                "perimax-from-2partition(" + describe(c) + ")");
  return {std::move(inst), Rational(4 * cmax)};
}

Reduction reduce_2partition_to_aspect(const TwoPartitionInstance& c) {
  require_two_partition(c);
  const long cmin = *std::min_element(c.begin(), c.end());
  const Rational total(std::accumulate(c.begin(), c.end(), 0L));
  const Rational m((total + 1) * (total + 1) * 2 / cmin);
  const Rational inv(1 / m);
  std::vector<Rational> areas;
  for (long v : c) areas.emplace_back(v);
  areas.insert(areas.end(), {m, m, inv, inv});
  Instance inst(Rational(m + inv + total / 2), Rational(2), std::move(areas),
                "aspect-from-2partition(" + describe(c) + ")");
  return {std::move(inst), m};
}

bool solve_2partition_dp(const TwoPartitionInstance& c) {
  require_two_partition(c);
  long total = 0;
  for (long v : c) {
    total += v;
    if (total > kTwoPartitionGuard) {
      throw Error(ErrorCode::kSizeGuard,
                  fmt::format("2-Partition sum exceeds {}", kTwoPartitionGuard));
    }
  }
  if (total % 2 != 0) return false;
  const auto half = static_cast<std::size_t>(total / 2);
  boost::dynamic_bitset<> reachable(half + 1);
  reachable.set(0);
  for (long v : c) {
    if (static_cast<std::size_t>(v) <= half) reachable |= reachable << static_cast<std::size_t>(v);
  }
  return reachable.test(half);
}

// ---------------------------------------------------------------------------
// JSON formats

namespace {

Rational rational_field(const json& j, const char* field) {
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw Error(ErrorCode::kBadRational,
              fmt::format("field \"{}\" must be an integer or a \"p/q\" string", field));
}

const json& require_field(const json& obj, const char* field) {
  const auto it = obj.find(field);
  if (it == obj.end()) {
    throw Error(ErrorCode::kMissingField, fmt::format("missing field \"{}\"", field));
  }
  return *it;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, fmt::format("malformed JSON: {}", e.what()));
  }
}

ordered_json meta_json(const GeneratorMeta& m) {
  ordered_json j;
  j["generator"] = "softrect";
  j["prng"] = Rng::kAlgorithm;
  j["seed"] = m.config.seed;
  j["class"] = class_name(m.config.cls);
  j["n"] = m.config.n;
  j["raw_area"] = m.raw_area;
  j["length_draws"] = m.length_draws;
  j["adjustment"] = adjustment_name(m.adjustment);
  return j;
}

}  // namespace

std::string instance_to_json(const Instance& inst, const std::optional<GeneratorMeta>& meta) {
  ordered_json j;
  j["version"] = kInstanceFormatVersion;
  j["name"] = inst.name();
  j["L1"] = to_string(inst.length());
  j["L2"] = to_string(inst.height());
  ordered_json areas = ordered_json::array();
  for (const Rational& a : inst.areas()) areas.push_back(to_string(a));
  j["areas"] = std::move(areas);
  if (meta) j["meta"] = meta_json(*meta);
  return j.dump(1) + "\n";
}

Instance instance_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::kMalformedJson, "instance must be a JSON object");
  const json& version = require_field(j, "version");
  if (!version.is_number_integer() || version.get<long>() != kInstanceFormatVersion) {
    throw Error(ErrorCode::kUnsupportedVersion,
                fmt::format("unsupported instance version {}", version.dump()));
  }
  std::string name;
  if (const auto it = j.find("name"); it != j.end()) {
    if (!it->is_string()) throw Error(ErrorCode::kMalformedJson, "\"name\" must be a string");
    name = it->get<std::string>();
  }
  const Rational length = rational_field(require_field(j, "L1"), "L1");
  const Rational height = rational_field(require_field(j, "L2"), "L2");
  const json& areas_json = require_field(j, "areas");
  if (!areas_json.is_array()) throw Error(ErrorCode::kMalformedJson, "\"areas\" must be an array");
  std::vector<Rational> areas;
  for (const json& a : areas_json) areas.push_back(rational_field(a, "areas"));
  return Instance(length, height, std::move(areas), std::move(name));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, fmt::format("cannot write {}", tmp.string()));
    out << text;
    if (!out.flush()) throw Error(ErrorCode::kIoError, fmt::format("cannot write {}", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, fmt::format("cannot replace {}", path.string()));
  }
}

void write_instance(const Instance& inst, const std::filesystem::path& path,
                    const std::optional<GeneratorMeta>& meta) {
  write_text_file_atomic(path, instance_to_json(inst, meta));
}

Instance read_instance(const std::filesystem::path& path) {
  return instance_from_json(read_text_file(path));
}

std::string partition_to_json(const Partition& partition) {
  json j = json::array();
  for (const Layer& layer : canonicalize(partition).layers) {
    json l = json::array();
    for (int i : layer) l.push_back(i + 1);
    j.push_back(std::move(l));
  }
  return j.dump();
}

Partition partition_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw Error(ErrorCode::kMalformedJson, "partition must be an array of arrays");
  Partition p;
  for (const json& layer : j) {
    if (!layer.is_array()) {
      throw Error(ErrorCode::kMalformedJson, "partition must be an array of arrays");
    }
    Layer l;
    for (const json& idx : layer) {
      if (!idx.is_number_integer()) {
        throw Error(ErrorCode::kMalformedJson, "partition entries must be integers");
      }
      const long v = idx.get<long>();
      if (v < 1 || v > std::numeric_limits<int>::max()) {
        throw Error(ErrorCode::kInvalidPartition,
                    fmt::format("rectangle index {} out of range", v));
      }
      l.push_back(static_cast<int>(v - 1));
    }
    p.layers.push_back(std::move(l));
  }
  return p;
}

Partition read_partition(const std::filesystem::path& path) {
  return partition_from_json(read_text_file(path));
}

void write_partition(const Partition& partition, const std::filesystem::path& path) {
  write_text_file_atomic(path, partition_to_json(partition) + "\n");
}

TwoPartitionInstance two_partition_from_json(std::string_view text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw Error(ErrorCode::kMalformedJson, "expected an array of integers");
  TwoPartitionInstance c;
  for (const json& v : j) {
    if (!v.is_number_integer()) {
      throw Error(ErrorCode::kMalformedJson, "expected an array of integers");
    }
    c.push_back(v.get<long>());
  }
  return c;
}

}  // namespace softrect
