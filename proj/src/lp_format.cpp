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


#include <cctype>
#include <map>
#include <set>
#include <string>

#include <fmt/format.h>

#include "softrect/mip.hpp"

#ifndef SOFTRECT_VERSION
#define SOFTRECT_VERSION "dev"
#endif

namespace softrect {

namespace {

constexpr std::size_t kWrapColumn = 200;
constexpr std::string_view kVersionPrefix = "softrect ";

std::string number(const Rational& v) { return to_decimal(v, 17); }

// Appends " + 3 x" style terms, wrapping long rows onto indented lines.
void write_terms(std::string& out, std::size_t& column, const LinearModel& m,
                 const std::vector<Term>& terms) {
  bool first = true;
  for (const Term& t : terms) {
    std::string piece;
    const bool negative = t.coef < 0;
    const Rational magnitude = abs(t.coef);
    if (first) {
      piece = negative ? "-" : "";
    } else {
      piece = negative ? " - " : " + ";
    }
    if (magnitude != 1) piece += number(magnitude) + " ";
    piece += m.variables()[t.var].name;
    if (column + piece.size() > kWrapColumn) {
      out += "\n   ";
      column = 3;
    }
    out += piece;
    column += piece.size();
    first = false;
  }
}

}  // namespace

std::string emit_lp(const LinearModel& m) {
  std::string out;
  out += fmt::format("\\ {}{}\n", kVersionPrefix, SOFTRECT_VERSION);
  for (const std::string& note : m.notes) out += fmt::format("\\ {}\n", note);

  out += "Minimize\n obj:";
  std::size_t column = out.size() - out.rfind('\n');
  if (!m.objective().empty()) {
    out += ' ';
    write_terms(out, column, m, m.objective());
  }
  out += "\nSubject To\n";
  for (const Constraint& c : m.constraints()) {
    std::string head = fmt::format(" {}: ", c.name);
    out += head;
    column = head.size();
    if (c.terms.empty()) {
      // LP rows need at least one variable.
      out += "0 " + m.variables().front().name;
    } else {
      write_terms(out, column, m, c.terms);
    }
    out += fmt::format(" {} {}\n", sense_symbol(c.sense), number(c.rhs));
  }
  out += "Bounds\n";
  for (const Variable& v : m.variables()) {
    if (!v.lower && !v.upper) {
      out += fmt::format(" {} free\n", v.name);
    } else if (v.lower && v.upper) {
      out += fmt::format(" {} <= {} <= {}\n", number(*v.lower), v.name, number(*v.upper));
    } else if (v.lower) {
      out += fmt::format(" {} >= {}\n", v.name, number(*v.lower));
    } else {
      out += fmt::format(" -inf <= {} <= {}\n", v.name, number(*v.upper));
    }
  }
  bool any_binary = false;
  for (const Variable& v : m.variables()) {
    if (v.type != VarType::kBinary) continue;
    if (!any_binary) out += "Binaries\n";
    any_binary = true;
    out += fmt::format(" {}\n", v.name);
  }
  out += "End\n";
  return out;
}

namespace {

enum class Section { kNone, kObjective, kRows, kBounds, kBinaries, kEnd };

struct Token {
  enum Kind { kName, kLabel, kNumber, kSign, kSense } kind;
  std::string text;
  int line;
};

[[noreturn]] void fail(int line, const std::string& what) {
  throw Error(ErrorCode::kModelError, fmt::format("LP line {}: {}", line, what));
}

std::string lower_trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string r(s);
  for (char& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return r;
}

std::optional<Section> section_header(std::string_view line) {
  static const std::map<std::string, Section, std::less<>> headers{
      {"minimize", Section::kObjective}, {"minimise", Section::kObjective},
      {"min", Section::kObjective},      {"subject to", Section::kRows},
      {"such that", Section::kRows},     {"st", Section::kRows},
      {"s.t.", Section::kRows},          {"bounds", Section::kBounds},
      {"bound", Section::kBounds},       {"binaries", Section::kBinaries},
      {"binary", Section::kBinaries},    {"bin", Section::kBinaries},
      {"end", Section::kEnd}};
  const std::string key = lower_trimmed(line);
  const auto it = headers.find(key);
  if (it != headers.end()) return it->second;
  if (key == "maximize" || key == "maximise" || key == "max") {
    throw Error(ErrorCode::kModelError, "maximization models are not supported");
  }
  if (key == "generals" || key == "general" || key == "semi-continuous" || key == "sos") {
    throw Error(ErrorCode::kModelError, fmt::format("unsupported LP section \"{}\"", key));
  }
  return std::nullopt;
}

void tokenize(std::string_view line, int line_no, std::vector<Token>& out) {
  std::size_t p = 0;
  auto is_name_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  };
  while (p < line.size()) {
    const char c = line[p];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++p;
    } else if (c == '+' || c == '-') {
      out.push_back({Token::kSign, std::string(1, c), line_no});
      ++p;
    } else if (c == '<' || c == '>' || c == '=') {
      std::size_t q = p + 1;
      while (q < line.size() && (line[q] == '<' || line[q] == '>' || line[q] == '=')) ++q;
      std::string op(line.substr(p, q - p));
      if (op == "<" || op == "=<") op = "<=";
      if (op == ">" || op == "=>") op = ">=";
      if (op != "<=" && op != ">=" && op != "=") fail(line_no, "bad operator " + op);
      out.push_back({Token::kSense, op, line_no});
      p = q;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t q = p;
      while (q < line.size() &&
             (std::isdigit(static_cast<unsigned char>(line[q])) || line[q] == '.')) {
        ++q;
      }
      if (q < line.size() && (line[q] == 'e' || line[q] == 'E')) {
        std::size_t r = q + 1;
        if (r < line.size() && (line[r] == '+' || line[r] == '-')) ++r;
        if (r < line.size() && std::isdigit(static_cast<unsigned char>(line[r]))) {
          while (r < line.size() && std::isdigit(static_cast<unsigned char>(line[r]))) ++r;
          q = r;
        }
      }
      out.push_back({Token::kNumber, std::string(line.substr(p, q - p)), line_no});
      p = q;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t q = p;
      while (q < line.size() && is_name_char(line[q])) ++q;
      std::string name(line.substr(p, q - p));
      std::size_t r = q;
      while (r < line.size() && line[r] == ' ') ++r;
      if (r < line.size() && line[r] == ':') {
        out.push_back({Token::kLabel, std::move(name), line_no});
        p = r + 1;
      } else {
        out.push_back({Token::kName, std::move(name), line_no});
        p = q;
      }
    } else {
      fail(line_no, fmt::format("unexpected character '{}'", c));
    }
  }
}

Rational parse_number(const Token& t) {
  try {
    return parse_decimal(t.text);
  } catch (const Error&) {
    fail(t.line, fmt::format("bad number \"{}\"", t.text));
  }
}

struct RawTerm {
  Rational coef;
  std::string name;
};

// Reads [sign] [number] name ... and stops at a sense token or the end.
std::vector<RawTerm> read_terms(const std::vector<Token>& tokens, std::size_t& pos) {
  std::vector<RawTerm> terms;
  while (pos < tokens.size() && tokens[pos].kind != Token::kSense &&
         tokens[pos].kind != Token::kLabel) {
    Rational coef(1);
    bool seen_sign = false;
    while (pos < tokens.size() && tokens[pos].kind == Token::kSign) {
      if (tokens[pos].text == "-") coef = -coef;
      seen_sign = true;
      ++pos;
    }
    if (!terms.empty() && !seen_sign) fail(tokens[pos].line, "expected + or - between terms");
    if (pos < tokens.size() && tokens[pos].kind == Token::kNumber) {
      coef *= parse_number(tokens[pos]);
      ++pos;
    }
    if (pos >= tokens.size() || tokens[pos].kind != Token::kName) {
      fail(pos < tokens.size() ? tokens[pos].line : tokens.back().line, "expected a variable");
    }
    terms.push_back({std::move(coef), tokens[pos].text});
    ++pos;
  }
  return terms;
}

Sense to_sense(const std::string& op) {
  if (op == "<=") return Sense::kLessEqual;
  if (op == ">=") return Sense::kGreaterEqual;
  return Sense::kEqual;
}

std::optional<Rational> bound_value(const std::vector<Token>& t, std::size_t& pos, int line) {
  Rational sign(1);
  while (pos < t.size() && t[pos].kind == Token::kSign) {
    if (t[pos].text == "-") sign = -sign;
    ++pos;
  }
  if (pos >= t.size()) fail(line, "incomplete bound");
  if (t[pos].kind == Token::kName) {
    const std::string v = lower_trimmed(t[pos].text);
    if (v == "inf" || v == "infinity") {
      ++pos;
      return std::nullopt;
    }
  }
  if (t[pos].kind != Token::kNumber) fail(line, "expected a number in bound");
  return Rational(sign * parse_number(t[pos++]));
}

}  // namespace

LinearModel parse_lp(std::string_view text) {
  Section section = Section::kNone;
  std::vector<std::string> notes;
  std::vector<Token> objective_tokens, row_tokens;
  std::vector<std::pair<int, std::vector<Token>>> bound_lines;
  std::vector<Token> binary_tokens;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size() && section != Section::kEnd) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view line = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto backslash = line.find('\\');
    if (backslash != std::string_view::npos) {
      std::string_view comment = line.substr(backslash + 1);
      if (!comment.empty() && comment.front() == ' ') comment.remove_prefix(1);
      if (section == Section::kNone && lower_trimmed(line.substr(0, backslash)).empty() &&
          comment.substr(0, kVersionPrefix.size()) != kVersionPrefix) {
        notes.emplace_back(comment);
      }
      line = line.substr(0, backslash);
    }
    if (lower_trimmed(line).empty()) continue;
    if (auto header = section_header(line)) {
      section = *header;
      continue;
    }
    switch (section) {
      case Section::kNone: fail(line_no, "content before the objective section");
      case Section::kObjective: tokenize(line, line_no, objective_tokens); break;
      case Section::kRows: tokenize(line, line_no, row_tokens); break;
      case Section::kBounds: {
        std::vector<Token> t;
        tokenize(line, line_no, t);
        bound_lines.emplace_back(line_no, std::move(t));
        break;
      }
      case Section::kBinaries: tokenize(line, line_no, binary_tokens); break;
      case Section::kEnd: break;
    }
  }
  if (section != Section::kEnd) throw Error(ErrorCode::kModelError, "missing End section");

  // Declaration order: bounds first, then first appearance anywhere else.
  struct Decl {
    std::optional<Rational> lower = Rational(0);
    std::optional<Rational> upper;
    bool binary = false;
    bool bounded = false;
  };
  std::vector<std::string> order;
  std::map<std::string, Decl, std::less<>> decls;
  auto declare = [&](const std::string& name) -> Decl& {
    auto [it, fresh] = decls.try_emplace(name);
    if (fresh) order.push_back(name);
    return it->second;
  };

  for (auto& [ln, t] : bound_lines) {
    std::size_t pos = 0;
    if (t.size() == 2 && t[0].kind == Token::kName && t[1].kind == Token::kName &&
        lower_trimmed(t[1].text) == "free") {
      Decl& d = declare(t[0].text);
      d.lower.reset();
      d.upper.reset();
      d.bounded = true;
      continue;
    }
    if (t.empty()) continue;
    if (t[0].kind == Token::kName && t.size() >= 3 && t[1].kind == Token::kSense) {
      // v op value
      Decl& d = declare(t[0].text);
      d.bounded = true;
      pos = 2;
      const std::optional<Rational> value = bound_value(t, pos, ln);
      const Sense s = to_sense(t[1].text);
      if (s != Sense::kLessEqual) d.lower = value;
      if (s != Sense::kGreaterEqual) d.upper = value;
    } else {
      // value op v [op value]
      const std::optional<Rational> left = bound_value(t, pos, ln);
      if (pos + 1 >= t.size() || t[pos].kind != Token::kSense || t[pos + 1].kind != Token::kName) {
        fail(ln, "malformed bound");
      }
      const Sense s1 = to_sense(t[pos].text);
      Decl& d = declare(t[pos + 1].text);
      d.bounded = true;
      pos += 2;
      if (s1 == Sense::kLessEqual) d.lower = left;
      if (s1 == Sense::kGreaterEqual) d.upper = left;
      if (s1 == Sense::kEqual) d.lower = d.upper = left;
      if (pos < t.size()) {
        if (t[pos].kind != Token::kSense) fail(ln, "malformed bound");
        const Sense s2 = to_sense(t[pos].text);
        ++pos;
        const std::optional<Rational> right = bound_value(t, pos, ln);
        if (s2 == Sense::kLessEqual) d.upper = right;
        if (s2 == Sense::kGreaterEqual) d.lower = right;
      }
    }
    if (pos != t.size()) fail(ln, "trailing tokens in bound");
  }

  std::size_t pos = 0;
  if (!objective_tokens.empty() && objective_tokens[0].kind == Token::kLabel) ++pos;
  const std::vector<RawTerm> objective = read_terms(objective_tokens, pos);
  if (pos != objective_tokens.size()) fail(objective_tokens[pos].line, "unexpected token in objective");
  for (const RawTerm& t : objective) declare(t.name);

  struct RawRow {
    std::string name;
    std::vector<RawTerm> terms;
    Sense sense;
    Rational rhs;
  };
  std::vector<RawRow> rows;
  pos = 0;
  while (pos < row_tokens.size()) {
    RawRow row;
    if (row_tokens[pos].kind == Token::kLabel) {
      row.name = row_tokens[pos++].text;
    } else {
      row.name = fmt::format("R{}", rows.size() + 1);
    }
    row.terms = read_terms(row_tokens, pos);
    if (pos >= row_tokens.size() || row_tokens[pos].kind != Token::kSense) {
      fail(row_tokens[std::min(pos, row_tokens.size() - 1)].line, "expected a comparison");
    }
    row.sense = to_sense(row_tokens[pos].text);
    const int ln = row_tokens[pos].line;
    ++pos;
    Rational sign(1);
    while (pos < row_tokens.size() && row_tokens[pos].kind == Token::kSign) {
      if (row_tokens[pos].text == "-") sign = -sign;
      ++pos;
    }
    if (pos >= row_tokens.size() || row_tokens[pos].kind != Token::kNumber) {
      fail(ln, "expected a constant right-hand side");
    }
    row.rhs = sign * parse_number(row_tokens[pos++]);
    for (const RawTerm& t : row.terms) declare(t.name);
    rows.push_back(std::move(row));
  }
  for (const Token& t : binary_tokens) {
    if (t.kind != Token::kName) fail(t.line, "expected a variable name");
    Decl& d = declare(t.text);
    d.binary = true;
    if (!d.bounded) d.upper = Rational(1);
  }

  LinearModel m;
  m.notes = std::move(notes);
  for (const std::string& name : order) {
    const Decl& d = decls.at(name);
    m.add_variable(name, d.lower, d.upper, d.binary ? VarType::kBinary : VarType::kContinuous);
  }
  auto resolve = [&](const std::vector<RawTerm>& raw) {
    std::vector<Term> terms;
    for (const RawTerm& t : raw) terms.push_back({t.coef, m.variable(t.name)});
    return terms;
  };
  m.set_objective(resolve(objective));
  for (RawRow& row : rows) {
    m.add_constraint(std::move(row.name), resolve(row.terms), row.sense, std::move(row.rhs));
  }
  return m;
}

}  // namespace softrect
