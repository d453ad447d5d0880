// Copyright 2026 the bitround authors
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

#include "bitround/opb.hpp"

#include <charconv>
#include <cctype>
#include <istream>
#include <optional>
#include <sstream>
#include <utility>

namespace bitround {

namespace {

constexpr int64_t kMaxVariableIndex = 10'000'000;

struct Token {
  std::string text;
  int column;  // 1-based
};

[[noreturn]] void fail(int line, int column, const std::string& message) {
  throw FormatError("opb:" + std::to_string(line) + ":" + std::to_string(column) + ": " +
                    message);
}

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::string text = line.substr(start, i - start);
    // ';' may be glued to the final token; split it off so the grammar only
    // ever sees it stand-alone.
    if (text.size() > 1 && text.back() == ';') {
      tokens.push_back({text.substr(0, text.size() - 1), static_cast<int>(start) + 1});
      tokens.push_back({";", static_cast<int>(i)});
    } else {
      tokens.push_back({std::move(text), static_cast<int>(start) + 1});
    }
  }
  return tokens;
}

std::optional<int64_t> try_parse_int(const std::string& text, bool* out_of_range) {
  *out_of_range = false;
  if (text.empty()) return std::nullopt;
  size_t first = (text[0] == '+' || text[0] == '-') ? 1 : 0;
  if (first == text.size()) return std::nullopt;
  for (size_t i = first; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return std::nullopt;
  }
  // from_chars rejects a leading '+'.
  const char* begin = text.data() + (text[0] == '+' ? 1 : 0);
  int64_t value = 0;
  auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
  if (ec == std::errc::result_out_of_range) {
    *out_of_range = true;
    return std::nullopt;
  }
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool is_relation(const std::string& text) {
  return text == ">=" || text == "=" || text == "<=";
}

struct PendingConstraint {
  std::vector<Term> terms;
  Relation relation;
  int64_t rhs;
  int line;
};

class Parser {
 public:
  BinaryProgram run(std::istream& in) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      size_t first = line.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (line[first] == '*') {
        handle_comment(line.substr(first + 1), line_no);
        continue;
      }
      handle_statement(line, line_no);
    }
    return finish();
  }

 private:
  void handle_comment(const std::string& body, int line_no) {
    std::istringstream words(body);
    std::string word;
    if (!(words >> word)) return;
    if (word == "#variable=") {
      int64_t n = 0;
      if (words >> n) {
        if (n < 0 || n > kMaxVariableIndex) {
          fail(line_no, 1, "declared #variable= count exceeds the supported limit");
        }
        declared_vars_ = n;
      }
      return;
    }
    if (word == "name:") {
      auto pos = body.find("name:");
      std::string rest = body.substr(pos + 5);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      name_ = rest;
      return;
    }
    if (word == "sense:") {
      std::string value;
      if (words >> value && value == "max") maximize_ = true;
    }
  }

  int64_t parse_coefficient(const Token& tok, int line) {
    bool range = false;
    auto value = try_parse_int(tok.text, &range);
    if (range) fail(line, tok.column, "coefficient does not fit in 64 bits");
    if (!value) {
      fail(line, tok.column,
           "expected integer coefficient, got '" + tok.text +
               "' (nonlinear products are not supported)");
    }
    return *value;
  }

  int32_t parse_variable(const Token& tok, int line) {
    if (tok.text.size() < 2 || tok.text[0] != 'x' ||
        !std::isdigit(static_cast<unsigned char>(tok.text[1]))) {
      fail(line, tok.column, "expected variable of the form xN, got '" + tok.text + "'");
    }
    bool range = false;
    auto idx = try_parse_int(tok.text.substr(1), &range);
    if (range || !idx || *idx > kMaxVariableIndex) {
      fail(line, tok.column, "variable index out of supported range");
    }
    if (*idx == 0) fail(line, tok.column, "variable index 0 is not allowed");
    if (declared_vars_ && *idx > *declared_vars_) {
      fail(line, tok.column, "variable index exceeds declared #variable= count");
    }
    max_var_seen_ = std::max(max_var_seen_, *idx);
    return static_cast<int32_t>(*idx);
  }

  void handle_statement(const std::string& line, int line_no) {
    std::vector<Token> toks = tokenize(line);
    if (toks.back().text != ";") {
      fail(line_no, toks.back().column, "statement must end with ';'");
    }
    bool objective = toks[0].text == "min:";
    size_t i = objective ? 1 : 0;
    if (objective && seen_objective_) fail(line_no, toks[0].column, "multiple objective lines");

    std::vector<Term> terms;
    std::optional<Relation> relation;
    int64_t rhs = 0;
    while (i < toks.size() && toks[i].text != ";") {
      if (is_relation(toks[i].text)) {
        if (objective) fail(line_no, toks[i].column, "relation not allowed in objective");
        if (terms.empty()) fail(line_no, toks[i].column, "constraint requires at least one term");
        relation = toks[i].text == ">=" ? Relation::GreaterEq
                   : toks[i].text == "=" ? Relation::Equal
                                         : Relation::LessEq;
        ++i;
        if (i >= toks.size() || toks[i].text == ";") {
          fail(line_no, toks[i - 1].column, "expected right-hand side after relation");
        }
        bool range = false;
        auto value = try_parse_int(toks[i].text, &range);
        if (range) fail(line_no, toks[i].column, "right-hand side does not fit in 64 bits");
        if (!value) fail(line_no, toks[i].column, "expected integer right-hand side");
        rhs = *value;
        ++i;
        break;
      }
      int64_t coef = parse_coefficient(toks[i], line_no);
      ++i;
      if (i >= toks.size() || toks[i].text == ";" || is_relation(toks[i].text)) {
        if (objective) {
          fail(line_no, toks[i - 1].column, "objective constant terms are not supported");
        }
        fail(line_no, toks[i - 1].column, "expected variable after coefficient");
      }
      bool unused = false;
      if (try_parse_int(toks[i].text, &unused) || unused) {
        if (objective) {
          fail(line_no, toks[i - 1].column, "objective constant terms are not supported");
        }
        fail(line_no, toks[i].column, "expected variable after coefficient");
      }
      terms.push_back({coef, parse_variable(toks[i], line_no)});
      ++i;
    }
    if (i + 1 != toks.size() || toks[i].text != ";") {
      fail(line_no, toks[i].column, "unexpected trailing tokens in statement");
    }
    if (objective) {
      if (terms.empty()) fail(line_no, toks[0].column, "objective requires at least one term");
      seen_objective_ = true;
      for (const Term& t : terms) {
        auto [it, inserted] = objective_.emplace(t.variable, t.coefficient);
        if (!inserted) it->second = checked_add(it->second, t.coefficient);
      }
    } else {
      if (!relation) fail(line_no, toks[0].column, "constraint is missing a relation");
      pending_.push_back({std::move(terms), *relation, rhs, line_no});
    }
  }

  BinaryProgram finish() {
    int32_t num_vars =
        static_cast<int32_t>(declared_vars_ ? *declared_vars_ : max_var_seen_);
    ObjectiveMap objective;
    for (auto& [var, coef] : objective_) {
      int64_t value = maximize_ ? checked_neg(coef) : coef;
      if (value != 0) objective[var] = value;
    }
    std::vector<LinearConstraint> constraints;
    constraints.reserve(pending_.size());
    for (PendingConstraint& p : pending_) {
      try {
        constraints.emplace_back(std::move(p.terms), p.relation, p.rhs);
      } catch (const DomainError& e) {
        fail(p.line, 1, e.what());
      }
    }
    return BinaryProgram(name_, maximize_ ? Sense::Maximize : Sense::Minimize, num_vars,
                         std::move(objective), std::move(constraints));
  }

  std::optional<int64_t> declared_vars_;
  int64_t max_var_seen_ = 0;
  std::string name_;
  bool maximize_ = false;
  bool seen_objective_ = false;
  std::map<int32_t, int64_t> objective_;
  std::vector<PendingConstraint> pending_;
};

std::string signed_token(int64_t v) {
  return v < 0 ? std::to_string(v) : "+" + std::to_string(v);
}

}  // namespace

BinaryProgram parse_opb(std::istream& in) {
  Parser parser;
  return parser.run(in);
}

BinaryProgram parse_opb(const std::string& text) {
  std::istringstream in(text);
  return parse_opb(in);
}

std::string write_opb(const BinaryProgram& bp, const std::vector<std::string>& extra_comments) {
  std::ostringstream out;
  out << "* #variable= " << bp.num_vars() << " #constraint= " << bp.constraints().size()
      << "\n";
  if (!bp.name().empty()) {
    if (bp.name().find_first_of("\r\n") != std::string::npos) {
      throw FormatError("program name contains a line break");
    }
    out << "* name: " << bp.name() << "\n";
  }
  if (bp.sense() == Sense::Maximize) out << "* sense: max\n";
  for (const std::string& comment : extra_comments) out << "* " << comment << "\n";
  if (!bp.objective().empty()) {
    out << "min:";
    for (const auto& [var, coef] : bp.objective()) {
      int64_t emitted = bp.sense() == Sense::Maximize ? checked_neg(coef) : coef;
      out << " " << signed_token(emitted) << " x" << var;
    }
    out << " ;\n";
  }
  for (const LinearConstraint& c : bp.constraints()) {
    bool first = true;
    for (const Term& t : c.terms()) {
      out << (first ? "" : " ") << signed_token(t.coefficient) << " x" << t.variable;
      first = false;
    }
    out << (c.relation() == Relation::Equal ? " = " : " >= ") << c.rhs() << " ;\n";
  }
  return out.str();
}

}  // namespace bitround
