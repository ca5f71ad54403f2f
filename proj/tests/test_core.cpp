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

#include <doctest.h>

#include <cmath>

#include "softrect/core.hpp"
#include "test_support.hpp"

using namespace softrect;
using softrect::testing::micro_instance;
using softrect::testing::one_based;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

}  // namespace

TEST_CASE("realize: two layers of height one") {
  const Instance inst = micro_instance();
  const Layout layout = realize(inst, one_based({{1, 2}, {3}}));
  REQUIRE(layout.layer_heights.size() == 2);
  CHECK(layout.layer_heights[0] == 1);
  CHECK(layout.layer_heights[1] == 1);
  CHECK(layout.rects[0].width == 1);
  CHECK(layout.rects[1].width == 1);
  CHECK(layout.rects[2].width == 2);
  CHECK_NOTHROW(validate_layout(inst, layout));
}

TEST_CASE("realize: unbalanced layers") {
  const Instance inst = micro_instance();
  const Layout layout = realize(inst, one_based({{1}, {2, 3}}));
  CHECK(layout.layer_heights[0] == q(1, 2));
  CHECK(layout.layer_heights[1] == q(3, 2));
  CHECK(layout.rects[0].width == 2);
  CHECK(layout.rects[1].width == q(2, 3));
  CHECK(layout.rects[2].width == q(4, 3));
  CHECK_NOTHROW(validate_layout(inst, layout));
}

TEST_CASE("realize: single rectangle fills the hard rectangle") {
  const Instance inst(q(3), q(5, 2), {q(15, 2)});
  const Layout layout = realize(inst, one_based({{1}}));
  CHECK(layout.layer_heights[0] == q(5, 2));
  CHECK(layout.rects[0].width == 3);
}

TEST_CASE("realize: invalid partitions name the offending index") {
  const Instance inst = micro_instance();
  CHECK_THROWS_WITH_AS(realize(inst, one_based({{1, 2}, {2, 3}})),
                       "rectangle 2 appears twice", Error);
  CHECK_THROWS_WITH_AS(realize(inst, one_based({{1, 2}})),
                       "rectangle 3 is not assigned", Error);
  CHECK_THROWS_WITH_AS(realize(inst, one_based({{1, 2, 3}, {}})),
                       "layer 2 is empty", Error);
  CHECK_THROWS_WITH_AS(realize(inst, one_based({{1, 2, 4}, {3}})),
                       "rectangle index 4 out of range 1..3", Error);
}

TEST_CASE("instance invariants") {
  CHECK_THROWS_AS(Instance::from_integers(2, 2, {1, 1, 1}), Error);
  CHECK_THROWS_AS(Instance::from_integers(2, 2, {}), Error);
  CHECK_THROWS_AS(Instance::from_integers(2, 2, {5, -1}), Error);
  try {
    Instance::from_integers(2, 2, {1, 1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kAreaSumMismatch);
  }
}

TEST_CASE("evaluate: objective values of the micro-instance") {
  const Instance inst = micro_instance();
  const Layout a = realize(inst, one_based({{1, 2}, {3}}));
  CHECK(evaluate(a, ObjectiveKind::kPeriSum).exact() == 14);
  CHECK(evaluate(a, ObjectiveKind::kPeriMax).exact() == 6);
  CHECK(evaluate(a, ObjectiveKind::kAspectRatio).exact() == 2);
  // Rectangle 3 is 2 x 1: (2 - 1)^2 / 2.
  CHECK(evaluate(a, ObjectiveKind::kAspectSurrogate).key == q(1, 2));

  const Layout b = realize(inst, one_based({{1}, {2, 3}}));
  CHECK(evaluate(b, ObjectiveKind::kPeriSum).exact() == 15);
  CHECK(evaluate(b, ObjectiveKind::kPeriMax).exact() == q(17, 3));
  CHECK(evaluate(b, ObjectiveKind::kAspectRatio).exact() == 4);
}

TEST_CASE("evaluate: a square has aspect one and surrogate zero") {
  const Instance inst = Instance::from_integers(2, 2, {4});
  const Layout layout = realize(inst, one_based({{1}}));
  CHECK(evaluate(layout, ObjectiveKind::kAspectRatio).exact() == 1);
  const ObjectiveValue s = evaluate(layout, ObjectiveKind::kAspectSurrogate);
  CHECK(s.key == 0);
  CHECK(s.value() == 0.0);
  CHECK_THROWS_AS(s.exact(), Error);
}

TEST_CASE("swap_delta: worked example and vanishing cases") {
  const Instance inst = micro_instance();
  const Partition before = one_based({{1, 3}, {2}});
  CHECK(swap_delta(inst, before, 2, 1) == -1);
  const Partition after = swap_rectangles(before, 2, 1);
  CHECK(evaluate(inst, before, ObjectiveKind::kPeriSum).exact() == 15);
  CHECK(evaluate(inst, after, ObjectiveKind::kPeriSum).exact() == 14);

  // Equal cardinalities.
  const Instance four = Instance::from_integers(3, 3, {1, 2, 3, 3});
  CHECK(swap_delta(four, one_based({{1, 2}, {3, 4}}), 0, 2) == 0);
  // Equal areas.
  CHECK(swap_delta(four, one_based({{1, 2, 3}, {4}}), 2, 3) == 0);
  // Same layer.
  CHECK_THROWS_AS(swap_delta(inst, before, 0, 2), Error);
}

TEST_CASE("canonicalize") {
  CHECK(canonicalize(one_based({{3}, {1, 2}})) == one_based({{1, 2}, {3}}));
  CHECK(canonicalize(one_based({{2}, {1}})) == one_based({{1}, {2}}));
  CHECK(canonicalize(one_based({{3, 1}, {2}})) == one_based({{1, 3}, {2}}));
  const Partition canonical = one_based({{1, 4, 5}, {2, 6}, {3}});
  CHECK(canonicalize(canonical) == canonical);
  CHECK(format_partition(canonical) == "{{1,4,5},{2,6},{3}}");
}

TEST_CASE("order_by_first_member puts rectangle i in a layer k <= i") {
  const Partition p = order_by_first_member(one_based({{2, 3}, {1}}));
  CHECK(p == one_based({{1}, {2, 3}}));
}

TEST_CASE("property: realized layouts satisfy every identity and both perimeter-sum forms agree") {
  Rng rng(7);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 8));
    const Instance inst = softrect::testing::random_instance(rng, n);
    const Partition p = softrect::testing::random_partition(rng, n);
    const Layout layout = realize(inst, p);
    REQUIRE_NOTHROW(validate_layout(inst, layout));
    REQUIRE(evaluate(layout, ObjectiveKind::kPeriSum).exact() ==
            peri_sum_from_layers(inst, p));
  }
}

TEST_CASE("property: swap delta matches re-evaluation and follows the cardinality rule") {
  Rng rng(11);
  int checked = 0;
  while (checked < 1000) {
    const int n = static_cast<int>(rng.uniform_int(2, 8));
    const Instance inst = softrect::testing::random_instance(rng, n);
    const Partition p = softrect::testing::random_partition(rng, n);
    if (p.layer_count() < 2) continue;
    const int i = static_cast<int>(rng.uniform_int(0, n - 1));
    const int j = static_cast<int>(rng.uniform_int(0, n - 1));
    const Layout layout = realize(inst, p);
    const int k = layout.rects[i].layer;
    const int l = layout.rects[j].layer;
    if (k == l) continue;
    ++checked;
    const Rational delta = swap_delta(inst, p, i, j);
    const Rational before = evaluate(inst, p, ObjectiveKind::kPeriSum).exact();
    const Rational after =
        evaluate(inst, swap_rectangles(p, i, j), ObjectiveKind::kPeriSum).exact();
    REQUIRE(delta == after - before);
    // With a_i > a_j: strictly better iff |S_k| > |S_l|.
    const auto sk = p.layers[k].size();
    const auto sl = p.layers[l].size();
    if (inst.area(i) > inst.area(j)) {
      if (sk > sl) REQUIRE(delta < 0);
      if (sk == sl) REQUIRE(delta == 0);
      if (sk < sl) REQUIRE(delta > 0);
    }
  }
}

TEST_CASE("property: the aspect-ratio maximizer is the surrogate maximizer") {
  Rng rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 8));
    const Instance inst = softrect::testing::random_instance(rng, n);
    const Layout layout = realize(inst, softrect::testing::random_partition(rng, n));
    const Rational worst_aspect = evaluate(layout, ObjectiveKind::kAspectRatio).exact();
    const Rational worst_surrogate = evaluate(layout, ObjectiveKind::kAspectSurrogate).key;
    for (const RectShape& r : layout.rects) {
      const bool max_aspect = aspect_ratio(r.width, r.height) == worst_aspect;
      const bool max_surrogate = surrogate_squared(r.width, r.height) == worst_surrogate;
      REQUIRE(max_aspect == max_surrogate);
    }
  }
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("4/6") == q(2, 3));
  CHECK(to_string(parse_rational("4/6")) == "2/3");
  CHECK(to_string(parse_rational("-12")) == "-12");
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("1/-2"), Error);
  CHECK_THROWS_AS(parse_rational("x"), Error);
  CHECK(parse_decimal("0.125") == q(1, 8));
  CHECK(parse_decimal("-2.5e-1") == q(-1, 4));
  CHECK(parse_decimal("3e2") == 300);
  CHECK(to_decimal(q(1, 2)) == "0.5");
  CHECK(to_decimal(q(7)) == "7");
  CHECK(to_decimal(q(1, 3)) == "0.33333333333333333");
  CHECK(to_decimal(q(2, 3)) == "0.66666666666666667");
  CHECK(to_decimal(q(-5, 2)) == "-2.5");
  CHECK(to_decimal(q(1, 10000000)) == "1e-07");
  CHECK(to_decimal(q(1, 1000)) == "0.001");
  CHECK(to_decimal(q(999999, 1000)) == "999.999");
  CHECK(to_decimal(q(2, 3), 6) == "0.666667");
  CHECK(to_decimal(Rational("123456789012345678")) == "1.2345678901234568e+17");
  CHECK(to_decimal(Rational("99999999999999999999/100")) == "1e+18");
}

TEST_CASE("property: decimal output re-reads to the same text") {
  Rng rng(17);
  for (int trial = 0; trial < 5000; ++trial) {
    const Rational v = q(rng.uniform_int(-1000000, 1000000), rng.uniform_int(1, 1000000));
    const std::string text = to_decimal(v);
    REQUIRE(to_decimal(parse_decimal(text)) == text);
    REQUIRE(std::abs(to_double(parse_decimal(text) - v)) <= 1e-16 * std::abs(to_double(v)) + 1e-300);
  }
}
