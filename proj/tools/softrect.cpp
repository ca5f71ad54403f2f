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


// softrect: command-line front end.
//
// Exit codes: 0 success, 1 infeasible or violated, 2 usage error,
// 3 invalid input, 4 time limit reached without proof.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "softrect/clws.hpp"
#include "softrect/exact.hpp"
#include "softrect/instances.hpp"
#include "softrect/mip.hpp"
#include "softrect/report.hpp"

namespace {

using namespace softrect;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitTimeLimit = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ordered_json partition_json(const Partition& p) {
  return ordered_json::parse(partition_to_json(p));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_text_file_atomic(out_path, text);
  }
}

Rational parse_number_arg(const std::string& text) {
  return text.find('/') != std::string::npos ? parse_rational(text) : parse_decimal(text);
}

// --------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string in;
  std::string objective;
  std::string method;
  double time_limit = kNoTimeLimit;
  bool json = false;
  std::string partition_out;
};

const std::map<std::string, std::vector<std::string>>& compatible_methods() {
  static const std::map<std::string, std::vector<std::string>> table{
      {"peri-sum", {"clws", "brute"}},
      {"peri-max", {"bb", "brute"}},
      {"aspect", {"bb", "binsearch", "brute"}},
  };
  return table;
}

int run_solve(const SolveArgs& args) {
  const auto& allowed = compatible_methods().at(args.objective);
  const std::string method = args.method.empty() ? allowed.front() : args.method;
  if (std::find(allowed.begin(), allowed.end(), method) == allowed.end()) {
    throw UsageError(fmt::format("method {} cannot solve objective {} (use one of: {})", method,
                                 args.objective, fmt::join(allowed, ", ")));
  }
  const Instance inst = read_instance(args.in);
  const ObjectiveKind kind =
      args.objective == "peri-sum" ? ObjectiveKind::kPeriSum
      : args.objective == "peri-max" ? ObjectiveKind::kPeriMax
                                     : ObjectiveKind::kAspectRatio;

  Partition partition;
  SearchStats stats;
  std::optional<BinarySearchTrace> trace;
  const auto start = std::chrono::steady_clock::now();
  if (method == "clws") {
    partition = solve_peri_sum(inst).partition;
  } else if (method == "brute") {
    partition = brute_force(inst, kind).partition;
  } else if (method == "bb") {
    BranchAndBoundResult r = kind == ObjectiveKind::kPeriMax
                                 ? solve_peri_max_bb(inst, args.time_limit)
                                 : solve_aspect_exact_bb(inst, args.time_limit);
    partition = std::move(r.partition);
    stats = r.stats;
  } else {
    AspectSearchResult r = solve_aspect_binary_search(inst, args.time_limit);
    partition = std::move(r.partition);
    stats = r.stats;
    trace = std::move(r.trace);
  }
  const Rational value = evaluate(inst, partition, kind).exact();
  if (method == "clws" || method == "brute") {
    stats.bound_lb = stats.bound_ub = to_double(value);
    stats.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (!args.partition_out.empty()) write_partition(partition, args.partition_out);

  if (args.json) {
    ordered_json s;
    s["method"] = method;
    s["status"] = status_name(stats.status);
    s["nodes"] = stats.nodes;
    s["time_s"] = stats.elapsed;
    s["lb"] = stats.bound_lb;
    s["ub"] = stats.bound_ub;
    if (trace) {
      s["iterations"] = trace->iterations.size();
      s["initial_up"] = trace->initial_up;
      s["phi_low"] = trace->phi_low;
      s["phi_up"] = trace->phi_up;
      s["gap"] = kBinarySearchGap;
    }
    ordered_json out;
    out["objective"] = args.objective;
    out["value"] = to_double(value);
    out["value_exact"] = to_string(value);
    out["partition"] = partition_json(partition);
    out["stats"] = std::move(s);
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << fmt::format("objective: {}\nvalue: {}\nvalue_exact: {}\npartition: {}\n",
                             args.objective, to_decimal(value), to_string(value),
                             format_partition(canonicalize(partition)));
    std::cout << fmt::format("method: {}\nstatus: {}\nnodes: {}\ntime_s: {:.6f}\n", method,
                             status_name(stats.status), stats.nodes, stats.elapsed);
    if (stats.status == SearchStatus::kTimeLimit) {
      std::cout << fmt::format("bounds: [{}, {}]\n", stats.bound_lb, stats.bound_ub);
    }
    if (trace) {
      std::cout << fmt::format(
          "iterations: {}\nbracket: [{}, {}]\nguarantee: within {} of the optimum\n",
          trace->iterations.size(), trace->phi_low, trace->phi_up, kBinarySearchGap);
    }
  }
  return stats.status == SearchStatus::kTimeLimit ? kExitTimeLimit : kExitOk;
}

// --------------------------------------------------------------------------
// eval

int run_eval(const std::string& in, const std::string& partition_path,
             const std::string& objective, bool json) {
  const Instance inst = read_instance(in);
  const Partition p = read_partition(partition_path);
  const Layout layout = realize(inst, p);
  std::vector<ObjectiveKind> kinds;
  if (objective.empty()) {
    kinds.assign(std::begin(kAllObjectives), std::end(kAllObjectives));
  } else {
    kinds.push_back(*parse_objective(objective));
  }
  ordered_json values = ordered_json::array();
  for (ObjectiveKind kind : kinds) {
    const ObjectiveValue v = evaluate(layout, kind);
    if (json) {
      ordered_json o;
      o["objective"] = objective_name(kind);
      o["value"] = v.value();
      if (v.squared()) {
        o["value_squared_exact"] = to_string(v.key);
      } else {
        o["value_exact"] = to_string(v.key);
      }
      values.push_back(std::move(o));
    } else if (v.squared()) {
      std::cout << fmt::format("{}: {} (squared: {})\n", objective_name(kind),
                               fmt::format("{:.17g}", v.value()), to_string(v.key));
    } else {
      std::cout << fmt::format("{}: {} ({})\n", objective_name(kind), to_decimal(v.key),
                               to_string(v.key));
    }
  }
  if (json) {
    ordered_json out;
    out["partition"] = partition_json(p);
    if (kinds.size() == 1) {
      for (auto& [k, v] : values[0].items()) out[k] = v;
    } else {
      out["values"] = std::move(values);
    }
    std::cout << out.dump(2) << '\n';
  }
  return kExitOk;
}

// --------------------------------------------------------------------------
// export-mip and check

int run_export(const std::string& in, const std::string& model_name,
               const std::string& phi_text, bool cuts, const std::string& out) {
  const Instance inst = read_instance(in);
  const ModelKind kind = *parse_model_kind(model_name);
  if (kind != ModelKind::kAspectDecision && !phi_text.empty()) {
    throw UsageError("--phi only applies to the aspect-decision model");
  }
  LinearModel model;
  switch (kind) {
    case ModelKind::kPeriMax:
      model = build_peri_max_model(inst, cuts);
      break;
    case ModelKind::kAspectReform:
      model = build_aspect_reform_model(inst, cuts);
      break;
    case ModelKind::kAspectDecision:
      if (phi_text.empty()) throw UsageError("--phi is required for the aspect-decision model");
      model = build_aspect_decision_model(inst, parse_number_arg(phi_text), cuts);
      break;
  }
  emit(emit_lp(model), out);
  std::cerr << fmt::format("{} model: {} variables, {} constraints\n", model_name,
                           model.variables().size(), model.constraints().size());
  return kExitOk;
}

int run_check(const std::string& model_path, const std::string& solution_path, double tolerance,
              bool json) {
  const LinearModel model = parse_lp(read_text_file(model_path));
  std::ifstream sol(solution_path);
  if (!sol) throw Error(ErrorCode::kIoError, fmt::format("cannot open {}", solution_path));
  const Assignment assignment = read_assignment(sol);
  const std::vector<Violation> violations = check_solution(model, assignment, tolerance);
  if (json) {
    ordered_json out;
    out["feasible"] = violations.empty();
    out["constraints"] = model.constraints().size();
    if (!model.objective().empty()) out["objective"] = to_double(objective_value(model, assignment));
    ordered_json list = ordered_json::array();
    for (const Violation& v : violations) {
      ordered_json o;
      o["name"] = v.name;
      o["lhs"] = to_double(v.lhs);
      o["sense"] = sense_symbol(v.sense);
      o["rhs"] = to_double(v.rhs);
      o["slack"] = to_double(v.slack);
      list.push_back(std::move(o));
    }
    out["violations"] = std::move(list);
    std::cout << out.dump(2) << '\n';
  } else {
    for (const Violation& v : violations) {
      std::cout << fmt::format("{}: lhs {} {} rhs {} (slack {})\n", v.name, to_decimal(v.lhs, 10),
                               sense_symbol(v.sense), to_decimal(v.rhs, 10),
                               to_decimal(v.slack, 6));
    }
    std::cout << fmt::format("{} of {} constraints checked, {} violated\n",
                             violations.empty() ? "feasible:" : "infeasible:",
                             model.constraints().size(), violations.size());
  }
  return violations.empty() ? kExitOk : kExitInfeasible;
}

// --------------------------------------------------------------------------
// bench and render

int run_bench_cmd(const std::string& dir, const std::string& solver_list, double time_limit,
                  int jobs, const std::string& out) {
  std::vector<std::string> solvers;
  std::stringstream ss(solver_list);
  for (std::string s; std::getline(ss, s, ',');) {
    if (!s.empty()) solvers.push_back(s);
  }
  const auto known = bench_solvers();
  for (const std::string& s : solvers) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw UsageError(fmt::format("unknown solver {} (known: {})", s, fmt::join(known, ", ")));
    }
  }
  if (solvers.empty()) throw UsageError("--solvers is empty");
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Instance> instances;
  for (const auto& f : files) {
    Instance inst = read_instance(f);
    if (inst.name().empty()) {
      inst = Instance(inst.length(), inst.height(), inst.areas(), f.stem().string());
    }
    instances.push_back(std::move(inst));
  }
  const std::vector<BenchRow> rows = run_bench(instances, solvers, time_limit, jobs);
  emit(bench_to_csv(rows), out);
  std::cerr << fmt::format("{} instances, {} rows\n", instances.size(), rows.size());
  return kExitOk;
}

int run_render(const std::string& in, const std::string& partition_path, const std::string& out,
               double width, bool no_labels) {
  const Instance inst = read_instance(in);
  const Layout layout = realize(inst, read_partition(partition_path));
  emit(render_svg(layout, {width, !no_labels}), out);
  return kExitOk;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return kExitUsage;
    default: return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layered partitioning of a rectangle into soft rectangles", "softrect"};
  app.set_version_flag("--version", std::string("softrect ") + SOFTRECT_VERSION);
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  std::string gen_class, gen_out;
  int gen_n = 0;
  std::uint64_t gen_seed = 0;
  gen->add_option("--class", gen_class, "Instance class")->required()->check(
      CLI::IsMember({"U", "MU", "MN"}));
  gen->add_option("--n", gen_n, "Number of rectangles")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "PRNG seed")->required();
  gen->add_option("--out", gen_out, "Output file (stdout if absent)");

  // solve
  auto* solve = app.add_subcommand("solve", "Solve an instance for one objective");
  SolveArgs sa;
  solve->add_option("--in", sa.in, "Instance JSON")->required();
  solve->add_option("--objective", sa.objective, "Objective")->required()->check(
      CLI::IsMember({"peri-sum", "peri-max", "aspect"}));
  solve->add_option("--method", sa.method, "Solver (default depends on the objective)")
      ->check(CLI::IsMember({"clws", "bb", "binsearch", "brute"}));
  solve->add_option("--time-limit", sa.time_limit, "Seconds")->check(CLI::PositiveNumber);
  solve->add_flag("--json", sa.json, "Machine-readable output");
  solve->add_option("--partition-out", sa.partition_out, "Also write the partition JSON here");

  // export-mip
  auto* exp = app.add_subcommand("export-mip", "Write a MIP model in LP format");
  std::string exp_in, exp_model, exp_phi, exp_out;
  bool exp_cuts = false;
  exp->add_option("--in", exp_in, "Instance JSON")->required();
  exp->add_option("--model", exp_model, "Model kind")->required()->check(
      CLI::IsMember({"peri-max", "aspect-reform", "aspect-decision"}));
  exp->add_option("--phi", exp_phi, "Aspect bound for the decision model (decimal or p/q)");
  exp->add_flag("--cuts", exp_cuts, "Add symmetry-breaking cuts");
  exp->add_option("--out", exp_out, "Output .lp file (stdout if absent)");

  // check
  auto* chk = app.add_subcommand("check", "Check a solution against an LP model");
  std::string chk_model, chk_solution;
  double chk_tol = kCheckTolerance;
  bool chk_json = false;
  chk->add_option("--model", chk_model, "LP file written by export-mip")->required();
  chk->add_option("--solution", chk_solution, "\"name value\" lines")->required();
  chk->add_option("--tolerance", chk_tol, "Additive tolerance")->check(CLI::NonNegativeNumber);
  chk->add_flag("--json", chk_json, "Machine-readable output");

  // eval
  auto* ev = app.add_subcommand("eval", "Evaluate a partition");
  std::string ev_in, ev_partition, ev_objective;
  bool ev_json = false;
  ev->add_option("--in", ev_in, "Instance JSON")->required();
  ev->add_option("--partition", ev_partition, "Partition JSON")->required();
  ev->add_option("--objective", ev_objective, "Objective (all if absent)")
      ->check(CLI::IsMember({"peri-sum", "peri-max", "aspect", "aspect-surrogate"}));
  ev->add_flag("--json", ev_json, "Machine-readable output");

  // bench
  auto* bench = app.add_subcommand("bench", "Run solvers over a directory of instances");
  std::string bench_dir, bench_solvers_arg, bench_out;
  double bench_limit = 60.0;
  int bench_jobs = 1;
  bench->add_option("--dir", bench_dir, "Directory of instance JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench->add_option("--solvers", bench_solvers_arg,
                    "Comma-separated: clws,peri-max-bb,aspect-bb,aspect-binsearch")
      ->required();
  bench->add_option("--time-limit", bench_limit, "Seconds per run")->check(CLI::PositiveNumber);
  bench->add_option("--jobs", bench_jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", bench_out, "CSV file (stdout if absent)");

  // render
  auto* render = app.add_subcommand("render", "Draw a partition as SVG");
  std::string r_in, r_partition, r_out;
  double r_width = 480.0;
  bool r_no_labels = false;
  render->add_option("--in", r_in, "Instance JSON")->required();
  render->add_option("--partition", r_partition, "Partition JSON")->required();
  render->add_option("--out", r_out, "SVG file (stdout if absent)");
  render->add_option("--width", r_width, "Pixel width of L1")->check(CLI::PositiveNumber);
  render->add_flag("--no-labels", r_no_labels, "Omit area labels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) {
      const GeneratedInstance g = generate({*parse_class(gen_class), gen_n, gen_seed});
      if (gen_out.empty()) {
        std::cout << instance_to_json(g.instance, g.meta);
      } else {
        write_instance(g.instance, gen_out, g.meta);
      }
      if (g.meta.adjustment != Adjustment::kDistinct) {
        std::cerr << fmt::format("note: area reduction used the {} fallback\n",
                                 adjustment_name(g.meta.adjustment));
      }
      return kExitOk;
    }
    if (*solve) return run_solve(sa);
    if (*exp) return run_export(exp_in, exp_model, exp_phi, exp_cuts, exp_out);
    if (*chk) return run_check(chk_model, chk_solution, chk_tol, chk_json);
    if (*ev) return run_eval(ev_in, ev_partition, ev_objective, ev_json);
    if (*bench) return run_bench_cmd(bench_dir, bench_solvers_arg, bench_limit, bench_jobs, bench_out);
    if (*render) return run_render(r_in, r_partition, r_out, r_width, r_no_labels);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error (" << error_code_name(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitUsage;
}
