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


#include "softrect/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <thread>

#include <fmt/format.h>

#include "softrect/clws.hpp"

namespace softrect {

std::vector<std::string_view> bench_solvers() {
  return {kSolverClws, kSolverPeriMaxBb, kSolverAspectBb, kSolverAspectBinarySearch};
}

int expected_bisection_steps(double initial_up, double gap) {
  if (initial_up - 1.0 < gap) return 0;
  return static_cast<int>(std::ceil(std::log2((initial_up - 1.0) / gap)));
}

namespace {

bool known_solver(std::string_view id) {
  for (std::string_view s : bench_solvers()) {
    if (s == id) return true;
  }
  return false;
}

void fill_from_stats(BenchRow& row, const SearchStats& stats, double time_limit) {
  row.nodes = stats.nodes;
  row.lb = stats.bound_lb;
  row.ub = stats.bound_ub;
  if (stats.status == SearchStatus::kTimeLimit) {
    row.status = "time-limit";
    row.time_s = time_limit;
  } else {
    row.status = "optimal";
  }
}

}  // namespace

BenchRow run_solver(const Instance& instance, std::string_view solver, double time_limit) {
  if (!known_solver(solver)) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown solver \"{}\"", solver));
  }
  BenchRow row;
  row.name = instance.name();
  row.n = instance.size();
  row.solver = std::string(solver);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (solver == kSolverClws) {
      const PeriSumSolution s = solve_peri_sum(instance);
      row.lb = row.ub = to_double(s.value);
      row.status = "optimal";
    } else if (solver == kSolverPeriMaxBb) {
      fill_from_stats(row, solve_peri_max_bb(instance, time_limit).stats, time_limit);
    } else if (solver == kSolverAspectBb) {
      fill_from_stats(row, solve_aspect_exact_bb(instance, time_limit).stats, time_limit);
    } else {
      const AspectSearchResult r = solve_aspect_binary_search(instance, time_limit);
      fill_from_stats(row, r.stats, time_limit);
      row.iters = static_cast<int>(r.trace.iterations.size());
    }
  } catch (const std::exception&) {
    row.nodes = 0;
    row.lb.reset();
    row.ub.reset();
    row.iters.reset();
    row.status = "error";
  }
  if (row.status != "time-limit") {
    row.time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return row;
}

std::vector<BenchRow> run_bench(const std::vector<Instance>& instances,
                                const std::vector<std::string>& solvers, double time_limit,
                                int jobs) {
  for (const std::string& s : solvers) {
    if (!known_solver(s)) {
      throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown solver \"{}\"", s));
    }
  }
  const std::size_t total = instances.size() * solvers.size();
  std::vector<BenchRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < total; t = next++) {
      rows[t] = run_solver(instances[t / solvers.size()], solvers[t % solvers.size()], time_limit);
    }
  };
  const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string optional_number(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !field.empty()) {
        fields.push_back(std::move(field));
        records.push_back(std::move(fields));
      }
      fields.clear();
      field.clear();
      any = false;
    } else {
      field += c;
      any = true;
    }
  }
  if (quoted) throw Error(ErrorCode::kInvalidArgument, "unterminated quote in CSV");
  if (any || !field.empty()) {
    fields.push_back(std::move(field));
    records.push_back(std::move(fields));
  }
  return records;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) {
    throw Error(ErrorCode::kInvalidArgument, fmt::format("bad number \"{}\" in CSV", s));
  }
  return v;
}

std::optional<double> parse_optional(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_double(s);
}

}  // namespace

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
  std::string out(kBenchCsvHeader);
  out += '\n';
  for (const BenchRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", csv_field(r.name), r.n, csv_field(r.solver),
                       r.nodes, r.time_s, optional_number(r.lb), optional_number(r.ub),
                       r.iters ? std::to_string(*r.iters) : std::string(), csv_field(r.status));
  }
  return out;
}

std::vector<BenchRow> bench_from_csv(std::string_view text) {
  const auto records = parse_csv(text);
  if (records.empty() || fmt::format("{}", fmt::join(records[0], ",")) != kBenchCsvHeader) {
    throw Error(ErrorCode::kInvalidArgument, "missing or unexpected CSV header");
  }
  std::vector<BenchRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& f = records[i];
    if (f.size() != 9) {
      throw Error(ErrorCode::kInvalidArgument,
                  fmt::format("CSV record {} has {} fields, expected 9", i + 1, f.size()));
    }
    BenchRow r;
    r.name = f[0];
    r.n = static_cast<std::size_t>(parse_double(f[1]));
    r.solver = f[2];
    r.nodes = static_cast<std::uint64_t>(std::stoull(f[3]));
    r.time_s = parse_double(f[4]);
    r.lb = parse_optional(f[5]);
    r.ub = parse_optional(f[6]);
    if (!f[7].empty()) r.iters = static_cast<int>(parse_double(f[7]));
    r.status = f[8];
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Cross-objective table

CrossTable cross_eval(const Instance& instance, const std::array<Partition, 3>& optima) {
  std::array<std::array<Rational, 3>, 3> value;
  for (int x = 0; x < 3; ++x) {
    const Layout layout = realize(instance, optima[x]);
    for (int y = 0; y < 3; ++y) value[x][y] = evaluate(layout, kCrossObjectives[y]).exact();
  }
  CrossTable table;
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      table[x][y] = {kCrossObjectives[x], kCrossObjectives[y], Rational(value[x][y] / value[y][y])};
    }
  }
  return table;
}

std::string format_cross_table(const CrossTable& table) {
  std::string out = fmt::format("{:<12}", "solved\\eval");
  for (ObjectiveKind y : kCrossObjectives) out += fmt::format(" {:>10}", objective_name(y));
  out += '\n';
  for (const auto& row : table) {
    out += fmt::format("{:<12}", objective_name(row[0].solved_as));
    for (const RatioCell& cell : row) out += fmt::format(" {:>10}", to_decimal(cell.ratio, 6));
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

std::string px(double v) {
  std::string s = fmt::format("{:.3f}", v);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s == "-0" ? "0" : s;
}

}  // namespace

std::string render_svg(const Layout& layout, const SvgOptions& options) {
  const std::size_t layers = layout.layer_heights.size();
  std::vector<std::vector<int>> members(layers);
  for (std::size_t i = 0; i < layout.rects.size(); ++i) {
    members[layout.rects[i].layer].push_back(static_cast<int>(i));
  }
  Rational length(0);
  for (int i : members.at(0)) length += layout.rects[i].width;
  Rational height(0);
  for (const Rational& h : layout.layer_heights) height += h;

  const double scale = options.width_px / to_double(length);
  const double width_px = options.width_px;
  const double height_px = to_double(height) * scale;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\">\n",
      px(width_px), px(height_px));
  out += "<g class=\"cells\" stroke=\"none\">\n";
  std::string cuts;
  std::string labels;
  Rational y(0);
  for (std::size_t k = 0; k < layers; ++k) {
    const Rational& h = layout.layer_heights[k];
    if (k > 0) {
      cuts += fmt::format("<line class=\"hcut\" x1=\"0\" y1=\"{0}\" x2=\"{1}\" y2=\"{0}\"/>\n",
                          px(to_double(y) * scale), px(width_px));
    }
    Rational x(0);
    for (std::size_t t = 0; t < members[k].size(); ++t) {
      const int i = members[k][t];
      const RectShape& r = layout.rects[i];
      if (t > 0) {
        cuts += fmt::format("<line class=\"vcut\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n",
                            px(to_double(x) * scale), px(to_double(y) * scale),
                            px(to_double(y + h) * scale));
      }
      const double cx = to_double(x) * scale;
      const double cy = to_double(y) * scale;
      const double cw = to_double(r.width) * scale;
      const double ch = to_double(h) * scale;
      const Rational area = r.width * r.height;
      out += fmt::format(
          "<rect class=\"cell\" data-rect=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
          "fill=\"hsl({},45%,82%)\"><title>rectangle {}: area {}</title></rect>\n",
          i + 1, px(cx), px(cy), px(cw), px(ch), (i * 47) % 360, i + 1, to_decimal(area, 6));
      if (options.labels) {
        labels += fmt::format(
            "<text class=\"label\" x=\"{}\" y=\"{}\" text-anchor=\"middle\" "
            "dominant-baseline=\"middle\">{}</text>\n",
            px(cx + cw / 2), px(cy + ch / 2), to_decimal(area, 6));
      }
      x += r.width;
    }
    y += h;
  }
  out += "</g>\n<g class=\"cuts\" stroke=\"black\" stroke-width=\"1\">\n" + cuts + "</g>\n";
  if (options.labels) {
    out += "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\">\n" + labels + "</g>\n";
  }
  out += fmt::format(
      "<rect class=\"outer\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"none\" "
      "stroke=\"black\" stroke-width=\"2\"/>\n",
      px(width_px), px(height_px));
  out += "</svg>\n";
  return out;
}

}  // namespace softrect
