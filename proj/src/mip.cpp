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


#include "softrect/mip.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

namespace softrect {

std::string_view sense_symbol(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual: return "<=";
    case Sense::kEqual: return "=";
    case Sense::kGreaterEqual: return ">=";
  }
  return "?";
}

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kPeriMax: return "peri-max";
    case ModelKind::kAspectReform: return "aspect-reform";
    case ModelKind::kAspectDecision: return "aspect-decision";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (ModelKind k : {ModelKind::kPeriMax, ModelKind::kAspectReform,
                      ModelKind::kAspectDecision}) {
    if (model_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

bool is_valid_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

int LinearModel::add_variable(std::string name, std::optional<Rational> lower,
                              std::optional<Rational> upper, VarType type) {
  if (!is_valid_name(name)) {
    throw Error(ErrorCode::kModelError, fmt::format("invalid variable name \"{}\"", name));
  }
  if (by_name_.count(name)) {
    throw Error(ErrorCode::kModelError, fmt::format("duplicate variable \"{}\"", name));
  }
  const int index = static_cast<int>(variables_.size());
  by_name_.emplace(name, index);
  variables_.push_back({std::move(name), std::move(lower), std::move(upper), type});
  return index;
}

std::vector<Term> LinearModel::normalize(std::vector<Term> terms) const {
  std::vector<Term> merged;
  std::vector<int> slot(variables_.size(), -1);
  for (Term& t : terms) {
    if (t.var < 0 || t.var >= static_cast<int>(variables_.size())) {
      throw Error(ErrorCode::kModelError, fmt::format("undeclared variable index {}", t.var));
    }
    if (slot[t.var] < 0) {
      slot[t.var] = static_cast<int>(merged.size());
      merged.push_back(std::move(t));
    } else {
      merged[slot[t.var]].coef += t.coef;
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
  return merged;
}

void LinearModel::add_constraint(std::string name, std::vector<Term> terms, Sense sense,
                                 Rational rhs) {
  if (!is_valid_name(name)) {
    throw Error(ErrorCode::kModelError, fmt::format("invalid constraint name \"{}\"", name));
  }
  if (constraint_names_.count(name)) {
    throw Error(ErrorCode::kModelError, fmt::format("duplicate constraint \"{}\"", name));
  }
  constraint_names_.emplace(name, static_cast<int>(constraints_.size()));
  constraints_.push_back({std::move(name), normalize(std::move(terms)), sense, std::move(rhs)});
}

void LinearModel::set_objective(std::vector<Term> terms) {
  objective_ = normalize(std::move(terms));
}

std::optional<int> LinearModel::find_variable(std::string_view name) const {
  const auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

int LinearModel::variable(std::string_view name) const {
  if (auto v = find_variable(name)) return *v;
  throw Error(ErrorCode::kModelError, fmt::format("unknown variable \"{}\"", name));
}

namespace {

std::string x_name(int i, int k) { return fmt::format("x_{}_{}", i + 1, k + 1); }
std::string w_name(int i, int k) { return fmt::format("w_{}_{}", i + 1, k + 1); }
std::string y_name(int k) { return fmt::format("y_{}", k + 1); }
std::string h_name(int k) { return fmt::format("h_{}", k + 1); }
std::string d_name(int i, int k) { return fmt::format("d_{}_{}", i + 1, k + 1); }

// Index helper for the square variable families.
struct Grid {
  int n = 0;
  int x0 = 0, w0 = 0, y0 = 0;
  int x(int i, int k) const { return x0 + i * n + k; }
  int w(int i, int k) const { return w0 + i * n + k; }
  int y(int k) const { return y0 + k; }
};

Grid declare_assignment_variables(LinearModel& m, int n) {
  Grid g;
  g.n = n;
  const Rational zero(0), one(1);
  g.x0 = static_cast<int>(m.variables().size());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m.add_variable(x_name(i, k), zero, one, VarType::kBinary);
  }
  g.w0 = static_cast<int>(m.variables().size());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m.add_variable(w_name(i, k), zero, std::nullopt);
  }
  g.y0 = static_cast<int>(m.variables().size());
  for (int k = 0; k < n; ++k) m.add_variable(y_name(k), zero, one, VarType::kBinary);
  return g;
}

// sum_j (a_j / L1) x_jk scaled by `factor`: the height of layer k.
void add_height_terms(std::vector<Term>& terms, const Instance& inst, const Grid& g, int k,
                      const Rational& factor) {
  for (int j = 0; j < g.n; ++j) {
    terms.push_back({Rational(factor * inst.area(j) / inst.length()), g.x(j, k)});
  }
}

// Assignment, layer filling, width linking and equal-height rows shared by
// all three models.
void add_shared_constraints(LinearModel& m, const Instance& inst, const Grid& g) {
  const int n = g.n;
  const Rational& L1 = inst.length();
  const Rational& L2 = inst.height();
  for (int i = 0; i < n; ++i) {
    std::vector<Term> t;
    for (int k = 0; k < n; ++k) t.push_back({1, g.x(i, k)});
    m.add_constraint(fmt::format("assign_{}", i + 1), std::move(t), Sense::kEqual, 1);
  }
  for (int k = 0; k < n; ++k) {
    std::vector<Term> t;
    for (int i = 0; i < n; ++i) t.push_back({1, g.x(i, k)});
    t.push_back({-1, g.y(k)});
    m.add_constraint(fmt::format("used_{}", k + 1), std::move(t), Sense::kGreaterEqual, 0);
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      m.add_constraint(fmt::format("open_{}_{}", i + 1, k + 1),
                       {{1, g.x(i, k)}, {-1, g.y(k)}}, Sense::kLessEqual, 0);
    }
  }
  for (int k = 0; k < n; ++k) {
    std::vector<Term> t;
    for (int i = 0; i < n; ++i) t.push_back({1, g.w(i, k)});
    t.push_back({Rational(-L1), g.y(k)});
    m.add_constraint(fmt::format("fill_{}", k + 1), std::move(t), Sense::kEqual, 0);
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      m.add_constraint(fmt::format("wmax_{}_{}", i + 1, k + 1),
                       {{1, g.w(i, k)}, {Rational(-L1), g.x(i, k)}}, Sense::kLessEqual, 0);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      m.add_constraint(fmt::format("wmin_{}_{}", i + 1, k + 1),
                       {{inst.area(i), g.x(i, k)}, {Rational(-L2), g.w(i, k)}},
                       Sense::kLessEqual, 0);
    }
  }
  // a_j w_ik - a_i w_jk <= a_j L1 (2 - x_ik - x_jk), then the mirrored row.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        const Rational big(inst.area(j) * L1);
        m.add_constraint(fmt::format("ratio_{}_{}_{}", i + 1, j + 1, k + 1),
                         {{inst.area(j), g.w(i, k)},
                          {Rational(-inst.area(i)), g.w(j, k)},
                          {big, g.x(i, k)},
                          {big, g.x(j, k)}},
                         Sense::kLessEqual, Rational(2 * big));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int k = 0; k < n; ++k) {
        const Rational big(inst.area(i) * L1);
        m.add_constraint(fmt::format("mirror_{}_{}_{}", i + 1, j + 1, k + 1),
                         {{inst.area(i), g.w(j, k)},
                          {Rational(-inst.area(j)), g.w(i, k)},
                          {big, g.x(i, k)},
                          {big, g.x(j, k)}},
                         Sense::kLessEqual, Rational(2 * big));
      }
    }
  }
}

void add_symmetry_cuts(LinearModel& m, const Grid& g) {
  for (int k = 0; k + 1 < g.n; ++k) {
    m.add_constraint(fmt::format("order_{}", k + 1), {{1, g.y(k)}, {-1, g.y(k + 1)}},
                     Sense::kGreaterEqual, 0);
  }
  for (int i = 0; i < g.n; ++i) {
    for (int k = i + 1; k < g.n; ++k) {
      m.add_constraint(fmt::format("lower_{}_{}", i + 1, k + 1), {{1, g.x(i, k)}},
                       Sense::kEqual, 0);
    }
  }
}

void add_header(LinearModel& m, const Instance& inst, ModelKind kind, bool with_cuts) {
  m.notes.push_back(fmt::format("instance: {}", inst.name().empty() ? "-" : inst.name()));
  m.notes.push_back(fmt::format("model: {}", model_kind_name(kind)));
  m.notes.push_back(fmt::format("cuts: {}", with_cuts ? "yes" : "no"));
  m.notes.push_back(fmt::format("rectangles: {}", inst.size()));
}

}  // namespace

LinearModel build_peri_max_model(const Instance& inst, bool with_cuts) {
  LinearModel m;
  add_header(m, inst, ModelKind::kPeriMax, with_cuts);
  const int n = static_cast<int>(inst.size());
  const Grid g = declare_assignment_variables(m, n);
  const int phi = m.add_variable("phi", Rational(0), std::nullopt);
  const Rational big(2 * (inst.length() + inst.height()));

  // 2 (L1 + L2)(x_ik - 1) + 2 (w_ik + height_k) <= phi
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      std::vector<Term> t{{big, g.x(i, k)}, {2, g.w(i, k)}};
      add_height_terms(t, inst, g, k, 2);
      t.push_back({-1, phi});
      m.add_constraint(fmt::format("perim_{}_{}", i + 1, k + 1), std::move(t),
                       Sense::kLessEqual, big);
    }
  }
  add_shared_constraints(m, inst, g);
  if (with_cuts) add_symmetry_cuts(m, g);
  m.set_objective({{1, phi}});
  return m;
}

Rational inverse_sqrt_coefficient(const Rational& area) {
  return parse_decimal(fmt::format("{:.17g}", 1.0 / std::sqrt(to_double(area))));
}

LinearModel build_aspect_reform_model(const Instance& inst, bool with_cuts) {
  LinearModel m;
  add_header(m, inst, ModelKind::kAspectReform, with_cuts);
  m.notes.push_back("phi bounds |w - h| / sqrt(a); recompute the aspect ratio from the partition");
  const int n = static_cast<int>(inst.size());
  const Grid g = declare_assignment_variables(m, n);
  const int d0 = static_cast<int>(m.variables().size());
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m.add_variable(d_name(i, k), Rational(0), std::nullopt);
  }
  const int phi = m.add_variable("phi", Rational(0), std::nullopt);
  auto d = [&](int i, int k) { return d0 + i * n + k; };

  add_shared_constraints(m, inst, g);
  const Rational& L1 = inst.length();
  const Rational& L2 = inst.height();
  // d_ik + L1 (1 - x_ik) >= w_ik - height_k
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      std::vector<Term> t{{1, d(i, k)}, {Rational(-L1), g.x(i, k)}, {-1, g.w(i, k)}};
      add_height_terms(t, inst, g, k, 1);
      m.add_constraint(fmt::format("dpos_{}_{}", i + 1, k + 1), std::move(t),
                       Sense::kGreaterEqual, Rational(-L1));
    }
  }
  // d_ik + L2 (1 - x_ik) >= height_k - w_ik
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      std::vector<Term> t{{1, d(i, k)}, {Rational(-L2), g.x(i, k)}, {1, g.w(i, k)}};
      add_height_terms(t, inst, g, k, -1);
      m.add_constraint(fmt::format("dneg_{}_{}", i + 1, k + 1), std::move(t),
                       Sense::kGreaterEqual, Rational(-L2));
    }
  }
  for (int i = 0; i < n; ++i) {
    const Rational c = inverse_sqrt_coefficient(inst.area(i));
    for (int k = 0; k < n; ++k) {
      m.add_constraint(fmt::format("bound_{}_{}", i + 1, k + 1), {{1, phi}, {Rational(-c), d(i, k)}},
                       Sense::kGreaterEqual, 0);
    }
  }
  if (with_cuts) add_symmetry_cuts(m, g);
  m.set_objective({{1, phi}});
  return m;
}

LinearModel build_aspect_decision_model(const Instance& inst, const Rational& phi,
                                        bool with_cuts) {
  if (phi < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                fmt::format("aspect bound must be at least 1, got {}", to_decimal(phi)));
  }
  LinearModel m;
  add_header(m, inst, ModelKind::kAspectDecision, with_cuts);
  m.notes.push_back(fmt::format("phi: {}", to_decimal(phi)));
  m.notes.push_back("h_k has lower bound 0");
  m.notes.push_back("hcap rows carry + L2 (1 - x_i_k) so that empty slots stay feasible");
  const int n = static_cast<int>(inst.size());
  const Grid g = declare_assignment_variables(m, n);
  const int h0 = static_cast<int>(m.variables().size());
  for (int k = 0; k < n; ++k) m.add_variable(h_name(k), Rational(0), std::nullopt);

  add_shared_constraints(m, inst, g);
  const Rational& L1 = inst.length();
  const Rational& L2 = inst.height();
  for (int k = 0; k < n; ++k) {
    std::vector<Term> t{{L1, h0 + k}};
    for (int i = 0; i < n; ++i) t.push_back({Rational(-inst.area(i)), g.x(i, k)});
    m.add_constraint(fmt::format("height_{}", k + 1), std::move(t), Sense::kEqual, 0);
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      m.add_constraint(fmt::format("wcap_{}_{}", i + 1, k + 1),
                       {{1, g.w(i, k)}, {Rational(-phi), h0 + k}}, Sense::kLessEqual, 0);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      m.add_constraint(fmt::format("hcap_{}_{}", i + 1, k + 1),
                       {{1, h0 + k}, {Rational(-phi), g.w(i, k)}, {L2, g.x(i, k)}},
                       Sense::kLessEqual, L2);
    }
  }
  if (with_cuts) add_symmetry_cuts(m, g);
  return m;
}

Assignment encode_partition(const Instance& inst, const Partition& partition, ModelKind kind,
                            LayerOrder order) {
  validate_partition(partition, inst.size());
  const Partition p =
      order == LayerOrder::kFirstMember ? order_by_first_member(partition) : partition;
  const Layout layout = realize(inst, p);
  const int n = static_cast<int>(inst.size());
  Assignment a;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const bool member = layout.rects[i].layer == k;
      a[x_name(i, k)] = member ? 1 : 0;
      a[w_name(i, k)] = member ? layout.rects[i].width : Rational(0);
    }
  }
  const int m = static_cast<int>(p.layer_count());
  for (int k = 0; k < n; ++k) a[y_name(k)] = k < m ? 1 : 0;

  switch (kind) {
    case ModelKind::kPeriMax:
      a["phi"] = evaluate(layout, ObjectiveKind::kPeriMax).exact();
      break;
    case ModelKind::kAspectReform: {
      Rational phi(0);
      for (int i = 0; i < n; ++i) {
        const Rational c = inverse_sqrt_coefficient(inst.area(i));
        for (int k = 0; k < n; ++k) {
          Rational d(0);
          if (layout.rects[i].layer == k) d = abs(layout.rects[i].width - layout.rects[i].height);
          phi = std::max(phi, Rational(c * d));
          a[d_name(i, k)] = std::move(d);
        }
      }
      a["phi"] = phi;
      break;
    }
    case ModelKind::kAspectDecision:
      for (int k = 0; k < n; ++k) a[h_name(k)] = k < m ? layout.layer_heights[k] : Rational(0);
      break;
  }
  return a;
}

namespace {

Rational evaluate_terms(const std::vector<const Rational*>& values,
                        const std::vector<Term>& terms) {
  Rational lhs(0);
  for (const Term& t : terms) lhs += t.coef * *values[t.var];
  return lhs;
}

std::vector<const Rational*> bind(const LinearModel& model, const Assignment& assignment) {
  for (const auto& [name, value] : assignment) {
    if (!model.find_variable(name)) {
      throw Error(ErrorCode::kModelError, fmt::format("unknown variable \"{}\"", name));
    }
  }
  std::vector<const Rational*> values;
  values.reserve(model.variables().size());
  for (const Variable& v : model.variables()) {
    const auto it = assignment.find(v.name);
    if (it == assignment.end()) {
      throw Error(ErrorCode::kModelError, fmt::format("no value for variable \"{}\"", v.name));
    }
    values.push_back(&it->second);
  }
  return values;
}

Rational slack_of(const Rational& lhs, Sense sense, const Rational& rhs) {
  switch (sense) {
    case Sense::kLessEqual: return rhs - lhs;
    case Sense::kGreaterEqual: return lhs - rhs;
    case Sense::kEqual: return -abs(lhs - rhs);
  }
  return 0;
}

}  // namespace

std::vector<Violation> check_solution(const LinearModel& model, const Assignment& assignment,
                                      double tolerance) {
  const std::vector<const Rational*> values = bind(model, assignment);
  const Rational tol(tolerance);
  std::vector<Violation> out;
  auto report = [&](std::string name, const Rational& lhs, Sense sense, const Rational& rhs) {
    Rational slack = slack_of(lhs, sense, rhs);
    if (slack < -tol) out.push_back({std::move(name), lhs, sense, rhs, std::move(slack)});
  };
  for (std::size_t v = 0; v < values.size(); ++v) {
    const Variable& var = model.variables()[v];
    const Rational& value = *values[v];
    if (var.lower) report("bound:" + var.name, value, Sense::kGreaterEqual, *var.lower);
    if (var.upper) report("bound:" + var.name, value, Sense::kLessEqual, *var.upper);
    if (var.type == VarType::kBinary) {
      const Rational nearest(value < Rational(1, 2) ? 0 : 1);
      report("binary:" + var.name, value, Sense::kEqual, nearest);
    }
  }
  for (const Constraint& c : model.constraints()) {
    report(c.name, evaluate_terms(values, c.terms), c.sense, c.rhs);
  }
  return out;
}

Rational objective_value(const LinearModel& model, const Assignment& assignment) {
  return evaluate_terms(bind(model, assignment), model.objective());
}

DecodedSolution decode_solution(const Instance& inst, const LinearModel& model,
                                const Assignment& assignment) {
  const int n = static_cast<int>(inst.size());
  Partition p;
  p.layers.resize(n);
  const Rational half(1, 2);
  for (int i = 0; i < n; ++i) {
    int layer = -1;
    for (int k = 0; k < n; ++k) {
      const auto it = assignment.find(x_name(i, k));
      if (it == assignment.end()) {
        throw Error(ErrorCode::kModelError, fmt::format("no value for {}", x_name(i, k)));
      }
      if (it->second >= half) {
        if (layer >= 0) {
          throw Error(ErrorCode::kModelError,
                      fmt::format("rectangle {} is assigned to two layers", i + 1));
        }
        layer = k;
      }
    }
    if (layer < 0) {
      throw Error(ErrorCode::kModelError, fmt::format("rectangle {} is not assigned", i + 1));
    }
    p.layers[layer].push_back(i);
  }
  std::erase_if(p.layers, [](const Layer& l) { return l.empty(); });
  DecodedSolution d;
  d.partition = canonicalize(std::move(p));
  if (!model.objective().empty()) d.model_objective = objective_value(model, assignment);
  const Layout layout = realize(inst, d.partition);
  d.peri_max = evaluate(layout, ObjectiveKind::kPeriMax).exact();
  d.aspect = evaluate(layout, ObjectiveKind::kAspectRatio).exact();
  return d;
}

Assignment read_assignment(std::istream& in) {
  Assignment a;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string name, value, extra;
    if (!(ss >> name) || name.front() == '#' || name.front() == '\\') continue;
    if (!(ss >> value) || (ss >> extra)) {
      throw Error(ErrorCode::kModelError,
                  fmt::format("line {}: expected \"name value\"", line_no));
    }
    try {
      a[name] = value.find('/') != std::string::npos ? parse_rational(value)
                                                     : parse_decimal(value);
    } catch (const Error& e) {
      throw Error(ErrorCode::kModelError, fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  return a;
}

void write_assignment(std::ostream& out, const Assignment& assignment) {
  for (const auto& [name, value] : assignment) out << name << ' ' << to_string(value) << '\n';
}

}  // namespace softrect
