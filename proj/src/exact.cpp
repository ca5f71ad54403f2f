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

#include "softrect/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "softrect/clws.hpp"

namespace softrect {

std::string_view status_name(SearchStatus status) {
  switch (status) {
    case SearchStatus::kOptimal: return "optimal";
    case SearchStatus::kTimeLimit: return "time-limit";
    case SearchStatus::kInfeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(double seconds) : start_(Clock::now()), limit_(seconds) {}

  // Polls the clock every 1024 calls.
  bool expired() {
    if (expired_) return true;
    if (!std::isfinite(limit_)) return false;
    if ((++calls_ & 1023u) != 0) return false;
    expired_ = elapsed() >= limit_;
    return expired_;
  }
  bool hit() const { return expired_; }
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

 private:
  Clock::time_point start_;
  double limit_;
  std::uint64_t calls_ = 0;
  bool expired_ = false;
};

// Rectangle indices by non-increasing area, ties by index.
std::vector<int> branching_order(const Instance& instance) {
  std::vector<int> order(instance.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.area(a) > instance.area(b);
  });
  return order;
}

// Relative slack on pruning comparisons. Bounds are computed in floating
// point; a node is cut only when its bound exceeds the incumbent by more than
// rounding could explain, so an exact optimum is never discarded.
constexpr double kPruneSlack = 1e-12;

bool dominated(double bound, double incumbent) {
  return bound > incumbent * (1.0 + kPruneSlack) + kPruneSlack;
}

}  // namespace

Partition partition_from_rgs(const std::vector<int>& rgs) {
  Partition p;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    const auto block = static_cast<std::size_t>(rgs[i]);
    if (block >= p.layers.size()) p.layers.resize(block + 1);
    p.layers[block].push_back(static_cast<int>(i));
  }
  return p;
}

ExactSolution brute_force(const Instance& instance, ObjectiveKind kind,
                          std::size_t max_size) {
  if (instance.size() > max_size) {
    throw Error(ErrorCode::kSizeGuard,
                fmt::format("brute force refuses n = {} (guard {})",
                            instance.size(), max_size));
  }
  std::optional<ExactSolution> best;
  for_each_restricted_growth_string(
      static_cast<int>(instance.size()), [&](const std::vector<int>& rgs) {
        Partition candidate = canonicalize(partition_from_rgs(rgs));
        ObjectiveValue value = evaluate(instance, candidate, kind);
        if (!best || value < best->value ||
            (value == best->value && candidate < best->partition)) {
          best = ExactSolution{std::move(candidate), std::move(value)};
        }
      });
  return std::move(*best);
}

namespace {

struct OpenLayer {
  Rational sum;          // exact area
  double sum_d = 0.0;
  double largest = 0.0;  // first member: the largest area in the layer
  double smallest = 0.0; // latest member: the smallest area so far
  Rational largest_exact;
  Rational smallest_exact;
};

enum class MinMaxKind { kPerimeter, kAspect };

// Depth-first search minimizing the largest perimeter or aspect ratio.
class MinMaxSearch {
 public:
  MinMaxSearch(const Instance& instance, MinMaxKind kind, double time_limit)
      : instance_(instance),
        kind_(kind),
        order_(branching_order(instance)),
        deadline_(time_limit),
        length_d_(to_double(instance.length())) {
    remaining_after_.assign(order_.size() + 1, 0.0);
    for (std::size_t t = order_.size(); t-- > 0;) {
      remaining_after_[t] = remaining_after_[t + 1] + to_double(instance.area(order_[t]));
    }
  }

  BranchAndBoundResult run(Partition incumbent) {
    incumbent_ = canonicalize(std::move(incumbent));
    incumbent_value_ = exact_objective(incumbent_);
    incumbent_d_ = to_double(incumbent_value_);
    const double root = root_bound();
    if (!proven_optimal()) {
      assignment_.assign(order_.size(), -1);
      layers_.clear();
      place(0, 0);
    }
    BranchAndBoundResult out;
    out.partition = incumbent_;
    out.value = incumbent_value_;
    out.stats.nodes = nodes_;
    out.stats.elapsed = deadline_.elapsed();
    out.stats.bound_ub = incumbent_d_;
    if (deadline_.hit()) {
      out.stats.status = SearchStatus::kTimeLimit;
      out.stats.bound_lb = std::min(root, incumbent_d_);
    } else {
      out.stats.status = SearchStatus::kOptimal;
      out.stats.bound_lb = incumbent_d_;
    }
    return out;
  }

 private:
  Rational exact_objective(const Partition& p) const {
    return evaluate(instance_, p, kind_ == MinMaxKind::kPerimeter
                                      ? ObjectiveKind::kPeriMax
                                      : ObjectiveKind::kAspectRatio)
        .exact();
  }

  double root_bound() const {
    if (kind_ == MinMaxKind::kAspect) return 1.0;
    return 4.0 * std::sqrt(to_double(instance_.area(order_.front())));
  }

  // Exact test of incumbent == root bound: every solution is at least the
  // root bound, so the search can stop.
  bool proven_optimal() const {
    if (kind_ == MinMaxKind::kAspect) return incumbent_value_ == 1;
    // incumbent == 4 sqrt(a_max)  <=>  incumbent^2 == 16 a_max
    return incumbent_value_ * incumbent_value_ <= 16 * instance_.area(order_.front());
  }

  // Smallest value the layer's worst rectangle can still reach once its
  // height settles somewhere in [lo, hi].
  double layer_bound(const OpenLayer& layer, double remaining) const {
    const double lo = layer.sum_d / length_d_;
    const double hi = (layer.sum_d + remaining) / length_d_;
    if (kind_ == MinMaxKind::kPerimeter) {
      // h + a / h is convex with its minimum at sqrt(a).
      const double h = std::clamp(std::sqrt(layer.largest), lo, hi);
      return 2.0 * (h + layer.largest / h);
    }
    // max(a_max / u, u / a_min) over u = h^2, minimized at sqrt(a_max a_min).
    const double u = std::clamp(std::sqrt(layer.largest * layer.smallest), lo * lo, hi * hi);
    return std::max(layer.largest / u, u / layer.smallest);
  }

  Rational exact_leaf_value() const {
    Rational worst = 0;
    for (const OpenLayer& layer : layers_) {
      const Rational h = layer.sum / instance_.length();
      Rational v;
      if (kind_ == MinMaxKind::kPerimeter) {
        v = 2 * (h + layer.largest_exact / h);
      } else {
        const Rational h2 = h * h;
        const Rational wide = layer.largest_exact / h2;
        const Rational tall = h2 / layer.smallest_exact;
        v = wide > tall ? wide : tall;
      }
      if (v > worst) worst = v;
    }
    return worst;
  }

  void record_leaf() {
    Rational value = exact_leaf_value();
    if (value >= incumbent_value_) return;
    Partition p;
    p.layers.resize(layers_.size());
    for (std::size_t t = 0; t < order_.size(); ++t) {
      p.layers[assignment_[t]].push_back(order_[t]);
    }
    incumbent_ = canonicalize(std::move(p));
    incumbent_value_ = std::move(value);
    incumbent_d_ = to_double(incumbent_value_);
    if (proven_optimal()) done_ = true;
  }

  // Assigns order_[t] to layer k (k == layers_.size() opens a new layer).
  void place(std::size_t t, int k) {
    if (done_ || deadline_.expired()) {
      done_ = true;
      return;
    }
    ++nodes_;
    const int rect = order_[t];
    const double area_d = to_double(instance_.area(rect));
    const bool opened = k == static_cast<int>(layers_.size());
    Rational saved_smallest;
    double saved_smallest_d = 0.0;
    if (opened) {
      OpenLayer layer;
      layer.sum = instance_.area(rect);
      layer.sum_d = area_d;
      layer.largest = layer.smallest = area_d;
      layer.largest_exact = layer.smallest_exact = instance_.area(rect);
      layers_.push_back(std::move(layer));
    } else {
      OpenLayer& layer = layers_[k];
      layer.sum += instance_.area(rect);
      layer.sum_d += area_d;
      saved_smallest = layer.smallest_exact;
      saved_smallest_d = layer.smallest;
      layer.smallest = area_d;
      layer.smallest_exact = instance_.area(rect);
    }
    assignment_[t] = k;

    const double remaining = remaining_after_[t + 1];
    bool pruned = false;
    for (const OpenLayer& layer : layers_) {
      if (dominated(layer_bound(layer, remaining), incumbent_d_)) {
        pruned = true;
        break;
      }
    }
    if (!pruned) {
      if (t + 1 == order_.size()) {
        record_leaf();
      } else {
        const int open = static_cast<int>(layers_.size());
        for (int next = 0; next <= open && !done_; ++next) place(t + 1, next);
      }
    }

    assignment_[t] = -1;
    if (opened) {
      layers_.pop_back();
    } else {
      OpenLayer& layer = layers_[k];
      layer.sum -= instance_.area(rect);
      layer.sum_d -= area_d;
      layer.smallest = saved_smallest_d;
      layer.smallest_exact = std::move(saved_smallest);
    }
  }

  const Instance& instance_;
  MinMaxKind kind_;
  std::vector<int> order_;
  std::vector<double> remaining_after_;  // area of order_[t..]
  Deadline deadline_;
  double length_d_;

  std::vector<int> assignment_;
  std::vector<OpenLayer> layers_;
  Partition incumbent_;
  Rational incumbent_value_;
  double incumbent_d_ = 0.0;
  std::uint64_t nodes_ = 0;
  bool done_ = false;
};

}  // namespace

BranchAndBoundResult solve_peri_max_bb(const Instance& instance, double time_limit,
                                       std::optional<Partition> initial) {
  Partition start = initial ? std::move(*initial) : solve_peri_sum(instance).partition;
  validate_partition(start, instance.size());
  return MinMaxSearch(instance, MinMaxKind::kPerimeter, time_limit).run(std::move(start));
}

BranchAndBoundResult solve_aspect_exact_bb(const Instance& instance, double time_limit,
                                           std::optional<Partition> initial) {
  Partition start = initial ? std::move(*initial) : solve_peri_sum(instance).partition;
  validate_partition(start, instance.size());
  return MinMaxSearch(instance, MinMaxKind::kAspect, time_limit).run(std::move(start));
}

std::optional<HeightInterval> height_interval_perimeter(const Rational& area,
                                                        double phi, int rect) {
  const double a = to_double(area);
  if (area <= 0 || !(phi > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "perimeter interval needs a > 0 and phi > 0");
  }
  // h^2 - (phi / 2) h + a <= 0
  const double half = phi / 2.0;
  const double disc = half * half - 4.0 * a;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  return HeightInterval{(half - root) / 2.0, (half + root) / 2.0, rect};
}

HeightInterval height_interval_aspect(const Rational& area, double phi, int rect) {
  if (area <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "aspect interval needs a > 0");
  }
  if (!(phi >= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "aspect ratio bound must be >= 1");
  }
  const double a = to_double(area);
  return HeightInterval{std::sqrt(a / phi), std::sqrt(a * phi), rect};
}

std::vector<HeightInterval> aspect_intervals(const Instance& instance, double phi) {
  std::vector<HeightInterval> out;
  out.reserve(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    out.push_back(height_interval_aspect(instance.area(i), phi, static_cast<int>(i)));
  }
  return out;
}

namespace {

struct IntervalLayer {
  double sum = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

class FeasibilitySearch {
 public:
  FeasibilitySearch(const Instance& instance, std::vector<HeightInterval> intervals,
                    double tolerance, double time_limit)
      : instance_(instance),
        intervals_(std::move(intervals)),
        tolerance_(tolerance),
        order_(branching_order(instance)),
        deadline_(time_limit),
        length_d_(to_double(instance.length())) {
    remaining_after_.assign(order_.size() + 1, 0.0);
    for (std::size_t t = order_.size(); t-- > 0;) {
      remaining_after_[t] = remaining_after_[t + 1] + to_double(instance.area(order_[t]));
    }
  }

  FeasibilityResult run() {
    assignment_.assign(order_.size(), -1);
    place(0, 0);
    FeasibilityResult out;
    out.nodes = nodes_;
    out.timed_out = deadline_.hit() && !found_;
    if (found_) out.witness = std::move(witness_);
    return out;
  }

 private:
  bool viable(const IntervalLayer& layer, double remaining) const {
    if (layer.lo > layer.hi + tolerance_) return false;
    const double min_height = layer.sum / length_d_;
    const double max_height = (layer.sum + remaining) / length_d_;
    return min_height <= layer.hi + tolerance_ && max_height >= layer.lo - tolerance_;
  }

  void place(std::size_t t, int k) {
    if (found_ || stop_ || deadline_.expired()) {
      stop_ = true;
      return;
    }
    ++nodes_;
    const int rect = order_[t];
    const HeightInterval& iv = intervals_[rect];
    const double area_d = to_double(instance_.area(rect));
    const bool opened = k == static_cast<int>(layers_.size());
    IntervalLayer saved;
    if (opened) {
      layers_.push_back({area_d, iv.lo, iv.hi});
    } else {
      saved = layers_[k];
      IntervalLayer& layer = layers_[k];
      layer.sum += area_d;
      layer.lo = std::max(layer.lo, iv.lo);
      layer.hi = std::min(layer.hi, iv.hi);
    }
    assignment_[t] = k;

    const double remaining = remaining_after_[t + 1];
    bool ok = true;
    for (const IntervalLayer& layer : layers_) {
      if (!viable(layer, remaining)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      if (t + 1 == order_.size()) {
        Partition p;
        p.layers.resize(layers_.size());
        for (std::size_t s = 0; s < order_.size(); ++s) {
          p.layers[assignment_[s]].push_back(order_[s]);
        }
        witness_ = canonicalize(std::move(p));
        found_ = true;
      } else {
        const int open = static_cast<int>(layers_.size());
        for (int next = 0; next <= open && !found_ && !stop_; ++next) place(t + 1, next);
      }
    }

    assignment_[t] = -1;
    if (opened) {
      layers_.pop_back();
    } else {
      layers_[k] = saved;
    }
  }

  const Instance& instance_;
  std::vector<HeightInterval> intervals_;
  double tolerance_;
  std::vector<int> order_;
  std::vector<double> remaining_after_;
  Deadline deadline_;
  double length_d_;

  std::vector<int> assignment_;
  std::vector<IntervalLayer> layers_;
  Partition witness_;
  std::uint64_t nodes_ = 0;
  bool found_ = false;
  bool stop_ = false;
};

}  // namespace

std::vector<HeightInterval> perimeter_intervals(const Instance& instance, double phi) {
  std::vector<HeightInterval> out;
  out.reserve(instance.size());
  for (std::size_t i = 0; i < instance.size(); ++i) {
    auto iv = height_interval_perimeter(instance.area(i), phi, static_cast<int>(i));
    // An empty interval is encoded as lo > hi so the search rejects it.
    out.push_back(iv ? *iv : HeightInterval{1.0, 0.0, static_cast<int>(i)});
  }
  return out;
}

FeasibilityResult feasibility_decision(
    const Instance& instance, const std::vector<std::optional<HeightInterval>>& intervals,
    double tolerance, double time_limit) {
  if (intervals.size() != instance.size()) {
    throw Error(ErrorCode::kInvalidArgument, "need one interval per rectangle");
  }
  std::vector<HeightInterval> dense;
  dense.reserve(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    if (!intervals[i]) return {};
    dense.push_back(*intervals[i]);
  }
  return feasibility_decision(instance, dense, tolerance, time_limit);
}

FeasibilityResult feasibility_decision(const Instance& instance,
                                       const std::vector<HeightInterval>& intervals,
                                       double tolerance, double time_limit) {
  if (intervals.size() != instance.size()) {
    throw Error(ErrorCode::kInvalidArgument, "need one interval per rectangle");
  }
  if (!(tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be non-negative");
  }
  for (const HeightInterval& iv : intervals) {
    if (iv.lo > iv.hi + tolerance) return {};
  }
  return FeasibilitySearch(instance, intervals, tolerance, time_limit).run();
}

AspectSearchResult solve_aspect_binary_search(const Instance& instance,
                                              double time_limit, double tolerance) {
  const Deadline clock(time_limit);
  AspectSearchResult out;
  PeriSumSolution start = solve_peri_sum(instance);
  out.partition = start.partition;
  out.value = evaluate(instance, out.partition, ObjectiveKind::kAspectRatio).exact();

  BinarySearchTrace& trace = out.trace;
  trace.phi_low = 1.0;
  trace.phi_up = to_double(out.value);
  trace.initial_up = trace.phi_up;
  trace.incumbent = out.partition;

  bool timed_out = false;
  while (out.value != 1 && trace.phi_up - trace.phi_low >= kBinarySearchGap) {
    const double remaining = time_limit - clock.elapsed();
    if (remaining <= 0.0) {
      timed_out = true;
      break;
    }
    const double mid = (trace.phi_low + trace.phi_up) / 2.0;
    FeasibilityResult answer =
        feasibility_decision(instance, aspect_intervals(instance, mid), tolerance, remaining);
    out.stats.nodes += answer.nodes;
    if (answer.timed_out) {
      timed_out = true;
      break;
    }
    const bool feasible = answer.witness.has_value();
    if (feasible) {
      trace.phi_up = mid;
      trace.incumbent = std::move(*answer.witness);
    } else {
      trace.phi_low = mid;
    }
    trace.iterations.push_back({mid, feasible, trace.phi_low, trace.phi_up});
  }

  out.partition = trace.incumbent;
  out.value = evaluate(instance, out.partition, ObjectiveKind::kAspectRatio).exact();
  out.stats.elapsed = clock.elapsed();
  out.stats.bound_lb = trace.phi_low;
  out.stats.bound_ub = to_double(out.value);
  out.stats.status = timed_out ? SearchStatus::kTimeLimit : SearchStatus::kOptimal;
  return out;
}

}  // namespace softrect
