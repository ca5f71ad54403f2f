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

// Domain types for partitioning an L1 x L2 rectangle into soft rectangles of
// prescribed area with two-stage guillotine cuts: horizontal cuts produce
// full-width layers, vertical cuts split every layer into rectangles.
//
// Rectangle indices are 0-based in this API. Everything that crosses a
// process boundary (files, CLI output) is 1-based.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softrect/error.hpp"
#include "softrect/rational.hpp"

namespace softrect {

// The hard rectangle and the areas of the soft rectangles to place in it.
// Immutable; the constructor enforces n >= 1, positive areas and
// sum(areas) == length * height exactly.
class Instance {
 public:
  Instance(Rational length, Rational height, std::vector<Rational> areas,
           std::string name = {});

  const Rational& length() const { return length_; }
  const Rational& height() const { return height_; }
  const std::vector<Rational>& areas() const { return areas_; }
  const Rational& area(std::size_t i) const { return areas_[i]; }
  std::size_t size() const { return areas_.size(); }
  const std::string& name() const { return name_; }

  // Integer-valued instance convenience constructor.
  static Instance from_integers(long length, long height,
                                const std::vector<long>& areas,
                                std::string name = {});

 private:
  Rational length_;
  Rational height_;
  std::vector<Rational> areas_;
  std::string name_;
};

using Layer = std::vector<int>;

// Ordered list of layers; each layer holds 0-based rectangle indices.
struct Partition {
  std::vector<Layer> layers;

  std::size_t layer_count() const { return layers.size(); }
  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

// Throws Error(kInvalidPartition) naming the offending 1-based index.
void validate_partition(const Partition& partition, std::size_t n);

// Layers sorted by non-increasing cardinality, ties by smallest member;
// members ascending. Idempotent.
Partition canonicalize(Partition partition);

// Layers ordered by their smallest member. Every rectangle i then sits in a
// layer k <= i (1-based), which is the order the MIP symmetry cuts accept.
Partition order_by_first_member(Partition partition);

// "{{1,2},{3}}" with 1-based indices.
std::string format_partition(const Partition& partition);

struct RectShape {
  int layer = 0;
  Rational width;   // l_i, along the L1 side
  Rational height;  // h_i, equal to the layer height
};

struct Layout {
  std::vector<Rational> layer_heights;
  std::vector<RectShape> rects;  // indexed by rectangle
};

// Realizes the geometry of a partition exactly: layer height is the layer's
// area divided by L1, each width is area over layer height.
Layout realize(const Instance& instance, const Partition& partition);

// Checks every layout identity exactly against the instance.
void validate_layout(const Instance& instance, const Layout& layout);

enum class ObjectiveKind {
  kPeriSum,          // sum of perimeters
  kPeriMax,          // largest perimeter
  kAspectRatio,      // largest max(l/h, h/l)
  kAspectSurrogate,  // largest |h - l| / sqrt(a)
};

inline constexpr ObjectiveKind kAllObjectives[] = {
    ObjectiveKind::kPeriSum, ObjectiveKind::kPeriMax,
    ObjectiveKind::kAspectRatio, ObjectiveKind::kAspectSurrogate};

std::string_view objective_name(ObjectiveKind kind);
std::optional<ObjectiveKind> parse_objective(std::string_view name);

// An objective value with an exact ordering key. For the surrogate objective
// the key is the square of the value, which orders identically because the
// surrogate is non-negative.
struct ObjectiveValue {
  ObjectiveKind kind = ObjectiveKind::kPeriSum;
  Rational key;

  bool squared() const { return kind == ObjectiveKind::kAspectSurrogate; }
  double value() const;
  // Exact value, only meaningful when !squared().
  const Rational& exact() const;

  friend bool operator<(const ObjectiveValue& a, const ObjectiveValue& b) {
    return a.key < b.key;
  }
  friend bool operator==(const ObjectiveValue& a, const ObjectiveValue& b) {
    return a.kind == b.kind && a.key == b.key;
  }
};

ObjectiveValue evaluate(const Layout& layout, ObjectiveKind kind);
ObjectiveValue evaluate(const Instance& instance, const Partition& partition,
                        ObjectiveKind kind);

// 2 * sum_k (|S_k| w(S_k) + L1), computed from the partition alone.
Rational peri_sum_from_layers(const Instance& instance,
                              const Partition& partition);

// max(l/h, h/l) of one rectangle.
Rational aspect_ratio(const Rational& width, const Rational& height);
// (l - h)^2 / (l h): the squared surrogate of one rectangle.
Rational surrogate_squared(const Rational& width, const Rational& height);

// Change of the perimeter sum when rectangles i and j (different layers) trade
// places: (2 / L1) (|S_k| - |S_l|) (a_j - a_i) with i in S_k, j in S_l.
Rational swap_delta(const Instance& instance, const Partition& partition,
                    int i, int j);

// Returns a copy of the partition with rectangles i and j exchanged.
Partition swap_rectangles(Partition partition, int i, int j);

}  // namespace softrect
