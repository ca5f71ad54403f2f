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

#include "softrect/core.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include <fmt/format.h>

namespace softrect {

Instance::Instance(Rational length, Rational height, std::vector<Rational> areas,
                   std::string name)
    : length_(std::move(length)),
      height_(std::move(height)),
      areas_(std::move(areas)),
      name_(std::move(name)) {
  if (areas_.empty()) {
    throw Error(ErrorCode::kInvalidInstance, "instance has no rectangles");
  }
  if (length_ <= 0 || height_ <= 0) {
    throw Error(ErrorCode::kInvalidInstance,
                "hard rectangle sides must be positive");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < areas_.size(); ++i) {
    if (areas_[i] <= 0) {
      throw Error(ErrorCode::kNonPositiveArea,
                  fmt::format("area of rectangle {} is not positive", i + 1));
    }
    total += areas_[i];
  }
  if (total != length_ * height_) {
    throw Error(ErrorCode::kAreaSumMismatch,
                fmt::format("area-sum mismatch: areas sum to {}, L1*L2 = {}",
                            to_string(total), to_string(Rational(length_ * height_))));
  }
}

Instance Instance::from_integers(long length, long height,
                                 const std::vector<long>& areas,
                                 std::string name) {
  std::vector<Rational> exact;
  exact.reserve(areas.size());
  for (long a : areas) exact.emplace_back(a);
  return Instance(Rational(length), Rational(height), std::move(exact),
                  std::move(name));
}

void validate_partition(const Partition& partition, std::size_t n) {
  if (partition.layers.empty()) {
    throw Error(ErrorCode::kInvalidPartition, "partition has no layers");
  }
  std::vector<char> seen(n, 0);
  for (std::size_t k = 0; k < partition.layers.size(); ++k) {
    const Layer& layer = partition.layers[k];
    if (layer.empty()) {
      throw Error(ErrorCode::kInvalidPartition,
                  fmt::format("layer {} is empty", k + 1));
    }
    for (int i : layer) {
      if (i < 0 || static_cast<std::size_t>(i) >= n) {
        throw Error(ErrorCode::kInvalidPartition,
                    fmt::format("rectangle index {} out of range 1..{}", i + 1, n));
      }
      if (seen[i]) {
        throw Error(ErrorCode::kInvalidPartition,
                    fmt::format("rectangle {} appears twice", i + 1));
      }
      seen[i] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      throw Error(ErrorCode::kInvalidPartition,
                  fmt::format("rectangle {} is not assigned", i + 1));
    }
  }
}

Partition canonicalize(Partition partition) {
  for (Layer& layer : partition.layers) std::sort(layer.begin(), layer.end());
  std::sort(partition.layers.begin(), partition.layers.end(),
            [](const Layer& a, const Layer& b) {
              if (a.size() != b.size()) return a.size() > b.size();
              return a.front() < b.front();
            });
  return partition;
}

Partition order_by_first_member(Partition partition) {
  for (Layer& layer : partition.layers) std::sort(layer.begin(), layer.end());
  std::sort(partition.layers.begin(), partition.layers.end(),
            [](const Layer& a, const Layer& b) { return a.front() < b.front(); });
  return partition;
}

std::string format_partition(const Partition& partition) {
  std::string out = "{";
  for (std::size_t k = 0; k < partition.layers.size(); ++k) {
    if (k) out += ",";
    out += "{";
    for (std::size_t t = 0; t < partition.layers[k].size(); ++t) {
      if (t) out += ",";
      out += std::to_string(partition.layers[k][t] + 1);
    }
    out += "}";
  }
  return out + "}";
}

Layout realize(const Instance& instance, const Partition& partition) {
  validate_partition(partition, instance.size());
  Layout layout;
  layout.layer_heights.reserve(partition.layers.size());
  layout.rects.resize(instance.size());
  for (std::size_t k = 0; k < partition.layers.size(); ++k) {
    Rational layer_area = 0;
    for (int i : partition.layers[k]) layer_area += instance.area(i);
    Rational height = layer_area / instance.length();
    for (int i : partition.layers[k]) {
      RectShape& rect = layout.rects[i];
      rect.layer = static_cast<int>(k);
      rect.width = instance.area(i) / height;
      rect.height = height;
    }
    layout.layer_heights.push_back(std::move(height));
  }
  return layout;
}

void validate_layout(const Instance& instance, const Layout& layout) {
  if (layout.rects.size() != instance.size()) {
    throw Error(ErrorCode::kInvalidArgument, "layout size does not match instance");
  }
  std::vector<Rational> widths(layout.layer_heights.size(), Rational(0));
  Rational total_height = 0;
  for (const Rational& h : layout.layer_heights) {
    if (h <= 0) throw Error(ErrorCode::kInvalidArgument, "non-positive layer height");
    total_height += h;
  }
  if (total_height != instance.height()) {
    throw Error(ErrorCode::kInvalidArgument, "layer heights do not sum to L2");
  }
  for (std::size_t i = 0; i < layout.rects.size(); ++i) {
    const RectShape& r = layout.rects[i];
    if (r.layer < 0 || static_cast<std::size_t>(r.layer) >= widths.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("rectangle {} has no layer", i + 1));
    }
    if (r.height != layout.layer_heights[r.layer]) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("rectangle {} height differs from its layer", i + 1));
    }
    if (r.width * r.height != instance.area(i)) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("rectangle {} does not preserve its area", i + 1));
    }
    widths[r.layer] += r.width;
  }
  for (std::size_t k = 0; k < widths.size(); ++k) {
    if (widths[k] != instance.length()) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("widths in layer {} do not sum to L1", k + 1));
    }
  }
}

std::string_view objective_name(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kPeriSum: return "peri-sum";
    case ObjectiveKind::kPeriMax: return "peri-max";
    case ObjectiveKind::kAspectRatio: return "aspect";
    case ObjectiveKind::kAspectSurrogate: return "aspect-surrogate";
  }
  return "unknown";
}

std::optional<ObjectiveKind> parse_objective(std::string_view name) {
  for (ObjectiveKind kind : kAllObjectives) {
    if (objective_name(kind) == name) return kind;
  }
  return std::nullopt;
}

double ObjectiveValue::value() const {
  return squared() ? std::sqrt(key.get_d()) : key.get_d();
}

const Rational& ObjectiveValue::exact() const {
  if (squared()) {
    throw Error(ErrorCode::kInvalidArgument,
                "surrogate objective has no exact rational value");
  }
  return key;
}

Rational aspect_ratio(const Rational& width, const Rational& height) {
  return width >= height ? Rational(width / height) : Rational(height / width);
}

Rational surrogate_squared(const Rational& width, const Rational& height) {
  Rational diff = width - height;
  return diff * diff / (width * height);
}

ObjectiveValue evaluate(const Layout& layout, ObjectiveKind kind) {
  ObjectiveValue out{kind, Rational(0)};
  for (const RectShape& r : layout.rects) {
    switch (kind) {
      case ObjectiveKind::kPeriSum:
        out.key += 2 * (r.width + r.height);
        break;
      case ObjectiveKind::kPeriMax: {
        Rational p = 2 * (r.width + r.height);
        if (p > out.key) out.key = p;
        break;
      }
      case ObjectiveKind::kAspectRatio: {
        Rational q = aspect_ratio(r.width, r.height);
        if (q > out.key) out.key = q;
        break;
      }
      case ObjectiveKind::kAspectSurrogate: {
        Rational q = surrogate_squared(r.width, r.height);
        if (q > out.key) out.key = q;
        break;
      }
    }
  }
  return out;
}

ObjectiveValue evaluate(const Instance& instance, const Partition& partition,
                        ObjectiveKind kind) {
  return evaluate(realize(instance, partition), kind);
}

Rational peri_sum_from_layers(const Instance& instance,
                              const Partition& partition) {
  validate_partition(partition, instance.size());
  Rational total = 0;
  for (const Layer& layer : partition.layers) {
    Rational layer_area = 0;
    for (int i : layer) layer_area += instance.area(i);
    total += Rational(static_cast<long>(layer.size())) * layer_area / instance.length() +
             instance.length();
  }
  return 2 * total;
}

namespace {

std::pair<int, int> locate(const Partition& partition, int index) {
  for (std::size_t k = 0; k < partition.layers.size(); ++k) {
    const Layer& layer = partition.layers[k];
    for (std::size_t t = 0; t < layer.size(); ++t) {
      if (layer[t] == index) return {static_cast<int>(k), static_cast<int>(t)};
    }
  }
  throw Error(ErrorCode::kInvalidArgument,
              fmt::format("rectangle {} not in partition", index + 1));
}

}  // namespace

Rational swap_delta(const Instance& instance, const Partition& partition,
                    int i, int j) {
  validate_partition(partition, instance.size());
  const auto [k, ti] = locate(partition, i);
  const auto [l, tj] = locate(partition, j);
  if (k == l) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("rectangles {} and {} share a layer", i + 1, j + 1));
  }
  const Rational size_diff(static_cast<long>(partition.layers[k].size()) -
                           static_cast<long>(partition.layers[l].size()));
  return 2 / instance.length() * size_diff * (instance.area(j) - instance.area(i));
}

Partition swap_rectangles(Partition partition, int i, int j) {
  const auto [k, ti] = locate(partition, i);
  const auto [l, tj] = locate(partition, j);
  std::swap(partition.layers[k][ti], partition.layers[l][tj]);
  return partition;
}

}  // namespace softrect
