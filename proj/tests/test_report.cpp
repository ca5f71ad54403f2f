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

#include <regex>

#include "softrect/clws.hpp"
#include "softrect/report.hpp"
#include "test_support.hpp"

using namespace softrect;
using softrect::testing::micro_instance;
using softrect::testing::one_based;

namespace {

std::size_t occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0;
  for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) {
    ++count;
  }
  return count;
}

std::array<Partition, 3> brute_optima(const Instance& inst) {
  return {brute_force(inst, ObjectiveKind::kPeriSum).partition,
          brute_force(inst, ObjectiveKind::kPeriMax).partition,
          brute_force(inst, ObjectiveKind::kAspectRatio).partition};
}

}  // namespace

TEST_CASE("cross_eval: micro-instance") {
  const Instance inst = micro_instance();
  const CrossTable t = cross_eval(inst, brute_optima(inst));
  CHECK(t[0][1].ratio == make_rational(18, 17));
  CHECK(t[1][2].ratio == 2);
  for (int k = 0; k < 3; ++k) CHECK(t[k][k].ratio == 1);
  CHECK(t[0][1].solved_as == ObjectiveKind::kPeriSum);
  CHECK(t[0][1].evaluated_as == ObjectiveKind::kPeriMax);
  // {1}|{2,3} ties with the brute-force pick and gives the same ratios.
  const CrossTable alt = cross_eval(inst, {one_based({{1, 2}, {3}}), one_based({{1}, {2, 3}}),
                                           one_based({{1, 2}, {3}})});
  CHECK(alt[1][2].ratio == 2);
  CHECK(alt[0][1].ratio == make_rational(18, 17));
  const std::string text = format_cross_table(t);
  CHECK(text.find("1.05882") != std::string::npos);
}

TEST_CASE("property: certified optima give ratios of at least one") {
  Rng rng(97);
  Rational sum_12(0), sum_32(0);
  const int count = 40;
  for (int trial = 0; trial < count; ++trial) {
    const Instance inst = softrect::testing::random_instance(rng, static_cast<int>(rng.uniform_int(2, 7)));
    const CrossTable t = cross_eval(inst, brute_optima(inst));
    for (const auto& row : t) {
      for (const RatioCell& cell : row) REQUIRE(cell.ratio >= 1);
    }
    sum_12 += t[0][1].ratio;
    sum_32 += t[2][1].ratio;
  }
  const double mean_12 = to_double(sum_12) / count;
  CHECK(mean_12 >= 1.0);
  CHECK(mean_12 <= 1.5);
  CHECK(to_double(sum_32) / count > mean_12);
}

TEST_CASE("expected_bisection_steps") {
  CHECK(expected_bisection_steps(2.0) == 7);
  CHECK(expected_bisection_steps(1.0) == 0);
  CHECK(expected_bisection_steps(1.005) == 0);
  CHECK(expected_bisection_steps(4.0) == 9);
}

TEST_CASE("run_bench: micro-instance rows") {
  const std::vector<std::string_view> ids = bench_solvers();
  const std::vector<std::string> solvers(ids.begin(), ids.end());
  const std::vector<BenchRow> rows = run_bench({micro_instance()}, solvers, 10.0);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].solver == "clws");
  CHECK(rows[0].lb == 14.0);
  CHECK(rows[0].ub == 14.0);
  CHECK_FALSE(rows[0].iters);
  CHECK(*rows[1].ub == doctest::Approx(17.0 / 3.0));
  CHECK(*rows[2].ub == 2.0);
  CHECK(rows[3].iters == 7);
  CHECK(*rows[3].ub == 2.0);
  for (const BenchRow& r : rows) {
    CHECK(r.status == "optimal");
    CHECK(r.name == "micro");
    CHECK(r.n == 3);
    CHECK(*r.lb <= *r.ub);
  }
  CHECK_THROWS_AS(run_bench({micro_instance()}, {"cplex"}, 1.0), Error);
}

TEST_CASE("run_bench: bisection step counts and input order with threads") {
  Rng rng(101);
  std::vector<Instance> instances;
  for (int i = 0; i < 12; ++i) {
    const Instance base = softrect::testing::random_instance(rng, 2 + i % 6);
    instances.emplace_back(base.length(), base.height(), base.areas(), "inst" + std::to_string(i));
  }
  const std::vector<BenchRow> rows =
      run_bench(instances, {"clws", "aspect-binsearch"}, 10.0, 4);
  REQUIRE(rows.size() == 24);
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const BenchRow& clws = rows[2 * i];
    const BenchRow& bs = rows[2 * i + 1];
    CHECK(clws.name == instances[i].name());
    CHECK(bs.name == instances[i].name());
    CHECK(clws.lb == clws.ub);
    const PeriSumSolution s1 = solve_peri_sum(instances[i]);
    const double up0 = to_double(evaluate(instances[i], s1.partition, ObjectiveKind::kAspectRatio).exact());
    CHECK(bs.iters == expected_bisection_steps(up0));
  }
}

TEST_CASE("run_bench: time limit rows") {
  Rng rng(103);
  const Instance big = softrect::testing::random_instance(rng, 45, 200);
  const BenchRow row = run_solver(big, kSolverPeriMaxBb, 0.05);
  CHECK(row.status == "time-limit");
  CHECK(row.time_s == 0.05);
  CHECK(*row.lb <= *row.ub);
}

TEST_CASE("bench CSV round trip") {
  std::vector<BenchRow> rows{
      {"micro", 3, "clws", 0, 0.000123, 14.0, 14.0, std::nullopt, "optimal"},
      {"perimax-from-2partition(1,1,2)", 3, "aspect-binsearch", 17, 1.0 / 3.0, 1.9921875, 2.0, 7,
       "optimal"},
      {"quote \"q\"", 9, "aspect-bb", 123456789, 60.0, 1.25, 3.5, std::nullopt, "time-limit"},
      {"broken", 2, "peri-max-bb", 0, 0.5, std::nullopt, std::nullopt, std::nullopt, "error"},
  };
  const std::string csv = bench_to_csv(rows);
  CHECK(csv.rfind("name,n,solver,nodes,time_s,lb,ub,iters,status\n", 0) == 0);
  CHECK(bench_from_csv(csv) == rows);
  CHECK(bench_to_csv(bench_from_csv(csv)) == csv);
  CHECK_THROWS_AS(bench_from_csv("a,b\n"), Error);
  CHECK_THROWS_AS(bench_from_csv(std::string(kBenchCsvHeader) + "\nx,1\n"), Error);
}

TEST_CASE("render_svg: micro layout") {
  const Instance inst = micro_instance();
  const Layout layout = realize(inst, one_based({{1, 2}, {3}}));
  const std::string svg = render_svg(layout, {200.0, true});
  CHECK(occurrences(svg, "class=\"cell\"") == 3);
  CHECK(occurrences(svg, "class=\"hcut\"") == 1);
  CHECK(occurrences(svg, "class=\"vcut\"") == 1);
  CHECK(occurrences(svg, "class=\"label\"") == 3);
  CHECK(occurrences(svg, "class=\"outer\"") == 1);
  CHECK(svg.find("width=\"200\" height=\"200\"") != std::string::npos);
  CHECK(render_svg(layout, {200.0, true}) == svg);
  CHECK(occurrences(render_svg(layout, {200.0, false}), "<text") == 0);
  CHECK(occurrences(svg, "<g") == occurrences(svg, "</g>"));
  CHECK(occurrences(svg, "<rect") == occurrences(svg, "</rect>") + 1);

  const Instance one = Instance::from_integers(3, 2, {6});
  const std::string single = render_svg(realize(one, one_based({{1}})));
  CHECK(occurrences(single, "class=\"hcut\"") == 0);
  CHECK(occurrences(single, "class=\"vcut\"") == 0);
}

TEST_CASE("property: SVG cell areas are proportional to rectangle areas") {
  Rng rng(107);
  const std::regex cell(
      R"re(data-rect="(\d+)" x="[-\d.]+" y="[-\d.]+" width="([\d.]+)" height="([\d.]+)")re");
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 12));
    const Instance inst = softrect::testing::random_instance(rng, n);
    const Layout layout = realize(inst, softrect::testing::random_partition(rng, n));
    const std::string svg = render_svg(layout, {600.0, false});
    const double total_px = 600.0 * 600.0 * to_double(inst.height() / inst.length());
    const double total = to_double(inst.length() * inst.height());
    int seen = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), cell); it != std::sregex_iterator();
         ++it) {
      const int i = std::stoi((*it)[1]) - 1;
      const double share = std::stod((*it)[2]) * std::stod((*it)[3]) / total_px;
      const double expected = to_double(inst.area(i)) / total;
      REQUIRE(std::abs(share - expected) <= 0.005 * expected + 1e-6);
      ++seen;
    }
    REQUIRE(seen == n);
  }
}
