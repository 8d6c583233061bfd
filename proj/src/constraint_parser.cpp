// Copyright 2026 The incmeter Authors.
//
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

#include <algorithm>
#include <cctype>
#include <sstream>

#include "incmeter/errors.hpp"
#include "incmeter/model.hpp"

namespace incmeter {
namespace {

enum class Tok { kIdent, kString, kNumber, kPunct, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  std::size_t column = 0;  // 1-based
};

class Lexer {
 public:
  Lexer(std::string_view line, std::size_t line_no)
      : s_(line), line_no_(line_no) {
    lex();
  }

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Tok::kEnd; }

  bool accept(std::string_view punct) {
    if (peek().kind == Tok::kPunct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(std::string_view punct) {
    if (!accept(punct)) fail(peek(), "expected '" + std::string(punct) + "'");
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != Tok::kIdent) fail(peek(), std::string("expected ") + what);
    return next().text;
  }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    std::string found = at.kind == Tok::kEnd ? "end of line" : "'" + at.text + "'";
    throw ParseError(line_no_, at.column, msg + ", found " + found);
  }
  std::size_t line_no() const { return line_no_; }

 private:
  void lex() {
    std::size_t i = 0;
    while (i < s_.size()) {
      char c = s_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      Token t;
      t.column = i + 1;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_')) {
          ++j;
        }
        t.kind = Tok::kIdent;
        t.text = std::string(s_.substr(i, j - i));
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && i + 1 < s_.size() &&
                  std::isdigit(static_cast<unsigned char>(s_[i + 1])))) {
        std::size_t j = i + 1;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        t.kind = Tok::kNumber;
        t.text = std::string(s_.substr(i, j - i));
        i = j;
      } else if (c == '"') {
        std::size_t j = i + 1;
        std::string v;
        while (j < s_.size() && s_[j] != '"') {
          if (s_[j] == '\\' && j + 1 < s_.size()) ++j;
          v.push_back(s_[j++]);
        }
        if (j >= s_.size()) {
          throw ParseError(line_no_, i + 1, "unterminated string constant");
        }
        t.kind = Tok::kString;
        t.text = std::move(v);
        i = j + 1;
      } else {
        static const char* kTwo[] = {"->", "!=", "<=", ">="};
        t.kind = Tok::kPunct;
        t.text = std::string(1, c);
        for (const char* two : kTwo) {
          if (s_.substr(i, 2) == two) t.text = two;
        }
        if (t.text.size() == 1 && std::string_view("(),:!=<>").find(c) ==
                                      std::string_view::npos) {
          throw ParseError(line_no_, i + 1,
                           std::string("unexpected character '") + c + "'");
        }
        i += t.text.size();
      }
      toks_.push_back(std::move(t));
    }
    Token end;
    end.column = s_.size() + 1;
    toks_.push_back(end);
  }

  std::string_view s_;
  std::size_t line_no_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

bool is_cmp(const Token& t) {
  static const char* kOps[] = {"=", "!=", "<", "<=", ">", ">="};
  return t.kind == Tok::kPunct &&
         std::any_of(std::begin(kOps), std::end(kOps),
                     [&](const char* op) { return t.text == op; });
}

CmpOp cmp_op(const std::string& s) {
  if (s == "=") return CmpOp::kEq;
  if (s == "!=") return CmpOp::kNe;
  if (s == "<") return CmpOp::kLt;
  if (s == "<=") return CmpOp::kLe;
  if (s == ">") return CmpOp::kGt;
  return CmpOp::kGe;
}

Term parse_term(Lexer& lx) {
  Token t = lx.next();
  switch (t.kind) {
    case Tok::kIdent:
      if (std::islower(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_') {
        return Term::variable(t.text);
      }
      [[fallthrough]];
    case Tok::kString:
    case Tok::kNumber:
      if (t.text == kNullToken) lx.fail(t, "NULL is reserved and cannot be a constant");
      return Term::constant(t.text);
    default:
      lx.fail(t, "expected a variable or constant");
  }
}

Atom parse_atom(Lexer& lx) {
  Atom atom;
  atom.predicate = lx.expect_ident("predicate name");
  lx.expect("(");
  do {
    atom.terms.push_back(parse_term(lx));
  } while (lx.accept(","));
  lx.expect(")");
  return atom;
}

DenialConstraint parse_dc_body(Lexer& lx, std::string name) {
  DenialConstraint dc;
  dc.name = std::move(name);
  lx.expect("!");
  if (lx.peek().kind != Tok::kIdent || lx.peek().text != "exists") {
    lx.fail(lx.peek(), "expected 'exists'");
  }
  lx.next();
  do {
    if (lx.peek().kind == Tok::kIdent && lx.peek(1).kind == Tok::kPunct &&
        lx.peek(1).text == "(") {
      dc.atoms.push_back(parse_atom(lx));
    } else {
      Comparison c;
      c.lhs = parse_term(lx);
      if (!is_cmp(lx.peek())) lx.fail(lx.peek(), "expected a comparison operator");
      c.op = cmp_op(lx.next().text);
      c.rhs = parse_term(lx);
      dc.comparisons.push_back(std::move(c));
    }
  } while (lx.accept(","));
  if (!lx.at_end()) lx.fail(lx.peek(), "expected ',' or end of line");
  return dc;
}

// R(x, y1, z1), R(x, y2, z2), y1 != y2 for R(A, B, C) and A -> B.
DenialConstraint expand_fd(Lexer& lx, std::string name, const Schema& schema) {
  std::string pred = lx.expect_ident("predicate name");
  const PredicateDecl* decl = schema.find(pred);
  if (decl == nullptr) {
    throw InputError("unknown_predicate",
                     "line " + std::to_string(lx.line_no()) +
                         ": unknown predicate '" + pred + "'");
  }
  lx.expect(":");
  auto position_of = [&](const Token& t) {
    auto it = std::find(decl->attributes.begin(), decl->attributes.end(), t.text);
    if (it == decl->attributes.end()) {
      throw InputError("unknown_attribute",
                       "line " + std::to_string(lx.line_no()) + ", column " +
                           std::to_string(t.column) + ": '" + pred +
                           "' has no attribute '" + t.text + "'");
    }
    return static_cast<std::size_t>(it - decl->attributes.begin());
  };
  std::vector<std::size_t> lhs;
  do {
    Token t = lx.peek();
    lx.expect_ident("attribute name");
    std::size_t p = position_of(t);
    if (std::find(lhs.begin(), lhs.end(), p) != lhs.end()) {
      lx.fail(t, "repeated determinant attribute");
    }
    lhs.push_back(p);
  } while (lx.accept(","));
  lx.expect("->");
  Token rt = lx.peek();
  lx.expect_ident("attribute name");
  std::size_t rhs = position_of(rt);
  if (std::find(lhs.begin(), lhs.end(), rhs) != lhs.end()) {
    lx.fail(rt, "dependent attribute also appears as a determinant");
  }
  if (!lx.at_end()) lx.fail(lx.peek(), "expected end of line");

  std::size_t others = decl->arity() - lhs.size() - 1;
  DenialConstraint dc;
  dc.name = std::move(name);
  for (int copy = 1; copy <= 2; ++copy) {
    Atom atom{pred, {}};
    std::size_t det_k = 0, other_k = 0;
    for (std::size_t p = 0; p < decl->arity(); ++p) {
      std::string var;
      if (std::find(lhs.begin(), lhs.end(), p) != lhs.end()) {
        ++det_k;
        var = lhs.size() == 1 ? "x" : "x" + std::to_string(det_k);
      } else if (p == rhs) {
        var = "y" + std::to_string(copy);
      } else {
        ++other_k;
        var = others == 1 ? "z" + std::to_string(copy)
                          : "z" + std::to_string(other_k) + "_" +
                                std::to_string(copy);
      }
      atom.terms.push_back(Term::variable(var));
    }
    dc.atoms.push_back(std::move(atom));
  }
  dc.comparisons.push_back(
      {Term::variable("y1"), CmpOp::kNe, Term::variable("y2")});
  return dc;
}

}  // namespace

ConstraintSet parse_constraints(std::string_view text, const Schema& schema) {
  std::vector<DenialConstraint> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    Lexer lx(std::string_view(raw).substr(0, hash), line_no);
    if (lx.at_end()) continue;
    Token kw = lx.next();
    if (kw.kind != Tok::kIdent || (kw.text != "dc" && kw.text != "fd")) {
      lx.fail(kw, "expected 'dc' or 'fd'");
    }
    std::string name = lx.expect_ident("constraint name");
    lx.expect(":");
    DenialConstraint dc = kw.text == "dc" ? parse_dc_body(lx, std::move(name))
                                          : expand_fd(lx, std::move(name), schema);
    // Validate here so the error can name the line.
    try {
      ConstraintSet single({dc}, schema);
    } catch (const InputError& e) {
      throw InputError(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
    out.push_back(std::move(dc));
  }
  return ConstraintSet(std::move(out), schema);
}

}  // namespace incmeter
