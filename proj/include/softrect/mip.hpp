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


// Solver-agnostic linear models for the layered partitioning problems, their
// LP-format text form, and exact checking of candidate solutions.
//
// Variable names (1-based): x_i_k rectangle i in layer k, w_i_k its width,
// y_k layer k used, h_k layer height, d_i_k |width - height| of rectangle i
// in layer k, phi the objective bound.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "softrect/core.hpp"

namespace softrect {

enum class VarType { kContinuous, kBinary };
enum class Sense { kLessEqual, kEqual, kGreaterEqual };

std::string_view sense_symbol(Sense sense);  // "<=", "=", ">="

struct Variable {
  std::string name;
  std::optional<Rational> lower;  // nullopt: unbounded
  std::optional<Rational> upper;
  VarType type = VarType::kContinuous;
};

struct Term {
  Rational coef;
  int var = -1;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  Rational rhs;
};

enum class ModelKind { kPeriMax, kAspectReform, kAspectDecision };

std::string_view model_kind_name(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

// A minimization model. Names are unique and match [A-Za-z][A-Za-z0-9_]*;
// violations throw Error(kModelError) when the name is added.
class LinearModel {
 public:
  int add_variable(std::string name, std::optional<Rational> lower,
                   std::optional<Rational> upper, VarType type = VarType::kContinuous);
  // Repeated variables are merged and zero coefficients dropped.
  void add_constraint(std::string name, std::vector<Term> terms, Sense sense,
                      Rational rhs);
  void set_objective(std::vector<Term> terms);

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Term>& objective() const { return objective_; }
  std::optional<int> find_variable(std::string_view name) const;
  // Throws Error(kModelError) for an unknown name.
  int variable(std::string_view name) const;

  // Free-form metadata written into the LP comment header.
  std::vector<std::string> notes;

 private:
  std::vector<Term> normalize(std::vector<Term> terms) const;

  std::vector<Variable> variables_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
  std::map<std::string, int, std::less<>> by_name_;
  std::map<std::string, int, std::less<>> constraint_names_;
};

bool is_valid_name(std::string_view name);

// Minimizes the largest perimeter. The optional cuts order the used layers
// first and keep rectangle i in a layer k <= i.
LinearModel build_peri_max_model(const Instance& instance, bool with_cuts);

// Minimizes the largest |l - h| / sqrt(a); its minimizers also minimize the
// largest aspect ratio, whose value must be recomputed from the partition.
LinearModel build_aspect_reform_model(const Instance& instance, bool with_cuts = false);

// Feasibility model for "largest aspect ratio <= phi". Throws for phi < 1.
LinearModel build_aspect_decision_model(const Instance& instance, const Rational& phi,
                                        bool with_cuts = false);

// 1 / sqrt(a) rounded to 17 significant digits, as stored in the reform model.
Rational inverse_sqrt_coefficient(const Rational& area);

std::string emit_lp(const LinearModel& model);
// Reads the LP subset emit_lp produces (sections, labelled rows, bounds,
// binaries). Throws Error(kModelError) with a line number on bad input.
LinearModel parse_lp(std::string_view text);

using Assignment = std::map<std::string, Rational, std::less<>>;

enum class LayerOrder {
  kFirstMember,  // layers sorted by smallest member; satisfies the symmetry cuts
  kAsGiven,
};

// Variable values of a partition under the given model kind; layer slots past
// the last layer are zero. For the reform model phi is the model's own bound:
// max of coefficient times d_i_k.
Assignment encode_partition(const Instance& instance, const Partition& partition,
                            ModelKind kind, LayerOrder order = LayerOrder::kFirstMember);

struct Violation {
  std::string name;  // constraint name, or "bound:<var>" / "binary:<var>"
  Rational lhs;
  Sense sense = Sense::kLessEqual;
  Rational rhs;
  Rational slack;  // negative when violated
};

inline constexpr double kCheckTolerance = 1e-6;

// Evaluates every constraint, bound and integrality requirement exactly.
// Throws Error(kModelError) when the assignment names an unknown variable or
// misses a declared one.
std::vector<Violation> check_solution(const LinearModel& model,
                                      const Assignment& assignment,
                                      double tolerance = kCheckTolerance);

Rational objective_value(const LinearModel& model, const Assignment& assignment);

struct DecodedSolution {
  Partition partition;  // canonical
  std::optional<Rational> model_objective;
  Rational peri_max;
  Rational aspect;  // recomputed from the partition
};

// Rebuilds the partition from x_i_k >= 1/2.
DecodedSolution decode_solution(const Instance& instance, const LinearModel& model,
                                const Assignment& assignment);

// "name value" per line; blank lines and lines starting with '#' or '\' are
// skipped. Values may be decimals or p/q.
Assignment read_assignment(std::istream& in);
void write_assignment(std::ostream& out, const Assignment& assignment);

}  // namespace softrect
