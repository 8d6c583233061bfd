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

#include "incmeter/aspgen.hpp"

#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "incmeter/errors.hpp"

namespace incmeter {
namespace {

const std::set<std::string, std::less<>> kAuxPredicates = {
    "del", "numDel", "cardPred", "cardDB", "cardRep", "cardRepDB", "dist",
    "v", "not"};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_symbolic_constant(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

bool is_natural(std::string_view s) {
  return !s.empty() && s.size() <= 9 &&
         std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
         (s.size() == 1 || s[0] != '0');
}

std::string constant(std::string_view v) {
  if (is_symbolic_constant(v) || is_natural(v)) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string atom_text(const std::string& pred, const std::string& tid,
                      const std::vector<std::string>& args,
                      std::string_view annotation = {}) {
  std::vector<std::string> all{tid};
  all.insert(all.end(), args.begin(), args.end());
  if (!annotation.empty()) all.emplace_back(annotation);
  return pred + "(" + join(all, ",") + ")";
}

// Per-constraint rendering of atoms and comparisons with ASP variables.
struct RenderedDc {
  std::vector<std::string> preds;             // lowercased
  std::vector<std::string> tids;              // T1, T2, ...
  std::vector<std::vector<std::string>> args;
  std::vector<std::string> comparisons;
};

RenderedDc render(const DenialConstraint& dc) {
  RenderedDc r;
  std::set<std::string> used;
  for (std::size_t i = 0; i < dc.atoms.size(); ++i) {
    r.tids.push_back("T" + std::to_string(i + 1));
    used.insert(r.tids.back());
  }
  std::map<std::string, std::string> names;
  auto term = [&](const Term& t) -> std::string {
    if (!t.is_variable()) return constant(t.text);
    auto it = names.find(t.text);
    if (it != names.end()) return it->second;
    std::string n = t.text;
    n[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(n[0])));
    while (used.count(n)) n += '_';
    used.insert(n);
    return names[t.text] = n;
  };
  for (const Atom& a : dc.atoms) {
    r.preds.push_back(lower(a.predicate));
    std::vector<std::string> args;
    for (const Term& t : a.terms) args.push_back(term(t));
    r.args.push_back(std::move(args));
  }
  for (const Comparison& c : dc.comparisons) {
    r.comparisons.push_back(term(c.lhs) + " " + std::string(to_string(c.op)) +
                            " " + term(c.rhs));
  }
  return r;
}

std::vector<std::string> generic_args(std::size_t arity) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= arity; ++j) out.push_back("X" + std::to_string(j));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  bool quoted = false;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '"') quoted = !quoted;
    if (quoted) continue;
    if (c == '(' || c == '{' || c == '[') ++depth;
    if (c == ')' || c == '}' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      auto part = trim(s.substr(start, i - start));
      if (!part.empty()) out.emplace_back(part);
      start = i + 1;
    }
  }
  auto part = trim(s.substr(start));
  if (!part.empty()) out.emplace_back(part);
  return out;
}

std::optional<std::int64_t> unary_int(std::string_view atom,
                                      std::string_view pred) {
  if (atom.size() < pred.size() + 2 || atom.substr(0, pred.size()) != pred ||
      atom[pred.size()] != '(' || atom.back() != ')') {
    return std::nullopt;
  }
  auto arg = atom.substr(pred.size() + 1, atom.size() - pred.size() - 2);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), v);
  if (ec != std::errc() || ptr != arg.data() + arg.size()) return std::nullopt;
  return v;
}

SolverModel make_model(std::string_view body) {
  SolverModel m;
  m.atoms = split_top_level(body);
  for (const auto& a : m.atoms) {
    if (auto d = unary_int(a, "dist")) m.dist = *d;
    if (auto t = unary_int(a, "del")) {
      m.deleted.push_back(Tid{static_cast<std::uint32_t>(*t)});
    }
  }
  std::sort(m.deleted.begin(), m.deleted.end());
  return m;
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

std::string AspProgram::to_text(bool with_queries) const {
  std::string out;
  for (const auto& f : facts) out += f + "\n";
  if (!facts.empty()) out += "\n";
  for (const auto& r : rules) out += r + "\n";
  for (const auto& w : weak_constraints) out += w + "\n";
  if (with_queries) {
    for (const auto& q : queries) out += q + "\n";
  }
  return out;
}

AspProgram emit_repair_program(const Instance& instance,
                               const ConstraintSet& constraints,
                               AspStyle style, bool with_count,
                               bool with_weak) {
  // Lowercased name -> arity, in name order.
  std::map<std::string, std::size_t> preds;
  for (const PredicateDecl& d : instance.schema().predicates()) {
    std::string n = lower(d.name);
    if (!is_symbolic_constant(n)) {
      throw InputError("asp_name_collision",
                       "predicate " + d.name + " is not a valid ASP name");
    }
    if (!preds.emplace(n, d.arity()).second) {
      throw InputError("asp_name_collision",
                       "predicates collide after lowercasing: " + n);
    }
  }
  for (const auto& [n, _] : preds) {
    if (kAuxPredicates.count(n) || preds.count(n + "_a")) {
      throw InputError("asp_name_collision",
                       "predicate " + n + " collides with a generated name");
    }
  }

  AspProgram prog;
  for (const Tuple& t : instance.tuples()) {
    std::vector<std::string> args;
    for (const auto& v : t.values) args.push_back(constant(v));
    prog.facts.push_back(
        atom_text(lower(t.predicate), std::to_string(t.tid.value), args) + ".");
  }

  for (const DenialConstraint& dc : constraints.constraints()) {
    RenderedDc r = render(dc);
    const std::size_t m = r.preds.size();
    auto plain = [&](std::size_t i) { return atom_text(r.preds[i], r.tids[i], r.args[i]); };
    auto annotated = [&](std::size_t i) {
      return atom_text(r.preds[i] + "_a", r.tids[i], r.args[i], "d");
    };
    if (style == AspStyle::kDisjunctive) {
      std::vector<std::string> head, body;
      for (std::size_t i = 0; i < m; ++i) {
        head.push_back(annotated(i));
        body.push_back(plain(i));
      }
      body.insert(body.end(), r.comparisons.begin(), r.comparisons.end());
      prog.rules.push_back(join(head, " v ") + " :- " + join(body, ", ") + ".");
      continue;
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::string> body{plain(i)};
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) body.push_back(plain(j));
      }
      body.insert(body.end(), r.comparisons.begin(), r.comparisons.end());
      for (std::size_t j = 0; j < m; ++j) {
        if (j != i) body.push_back("not " + annotated(j));
      }
      prog.rules.push_back(annotated(i) + " :- " + join(body, ", ") + ".");
    }
  }

  for (const auto& [n, arity] : preds) {
    auto args = generic_args(arity);
    prog.rules.push_back(atom_text(n + "_a", "T", args, "s") + " :- " +
                         atom_text(n, "T", args) + ", not " +
                         atom_text(n + "_a", "T", args, "d") + ".");
  }
  for (const auto& [n, arity] : preds) {
    prog.rules.push_back("del(T) :- " +
                         atom_text(n + "_a", "T", generic_args(arity), "d") + ".");
  }

  if (with_count) {
    prog.rules.push_back("#maxint = " +
                         std::to_string(std::max<std::size_t>(100, instance.size() + 1)) +
                         ".");
    prog.rules.push_back("numDel(N) :- #int(N), #count{T: del(T)} = N.");
    for (const auto& [n, arity] : preds) {
      prog.rules.push_back("cardPred(" + n + ",N) :- #int(N), #count{T : " +
                           atom_text(n, "T", generic_args(arity)) + "} = N.");
    }
    prog.rules.push_back("cardDB(N) :- #sum{X,P : cardPred(P,X)} = N.");
    for (const auto& [n, arity] : preds) {
      prog.rules.push_back("cardRep(" + n + ",N) :- #int(N), #count{T : " +
                           atom_text(n + "_a", "T", generic_args(arity), "s") +
                           "} = N.");
    }
    prog.rules.push_back("cardRepDB(N) :- #int(N), #sum{X,P : cardRep(P,X)} = N.");
    prog.rules.push_back("dist(N) :- #int(N), cardDB(A), cardRepDB(B), N = A - B.");
    if (!with_weak) prog.queries.push_back("dist(X)?");
  }
  if (with_weak) prog.weak_constraints.push_back(":~ del(T).");
  return prog;
}

std::vector<std::string> normalized_asp_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::map<std::string, std::string> rename;
  std::size_t i = 0;
  auto ident_char = [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (ident_char(c) || c == '#') {
      std::size_t start = i++;
      while (i < text.size() && ident_char(text[i])) ++i;
      std::string tok(text.substr(start, i - start));
      if (std::isupper(static_cast<unsigned char>(tok[0])) ||
          (tok[0] == '_' && tok.size() > 1)) {
        auto [it, fresh] = rename.try_emplace(tok, "");
        if (fresh) it->second = "V" + std::to_string(rename.size());
        tok = it->second;
      }
      out.push_back(std::move(tok));
    } else if (c == '"') {
      std::size_t start = i++;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\') ++i;
        ++i;
      }
      ++i;
      out.emplace_back(text.substr(start, std::min(i, text.size()) - start));
    } else {
      static const char* kTwo[] = {":-", ":~", "!=", "<=", ">=", "<>", "=="};
      std::string tok(1, c);
      for (const char* two : kTwo) {
        if (text.substr(i, 2) == two) tok = two;
      }
      i += tok.size();
      if (tok == "." || tok == "?") rename.clear();
      out.push_back(std::move(tok));
    }
  }
  return out;
}

SolverOutput parse_solver_output(std::string_view text) {
  SolverOutput out;
  std::size_t i = 0;
  std::string pending;  // text since the last model or line break
  auto flush_line = [&]() {
    const std::string held = std::move(pending);
    pending.clear();
    std::string_view line = trim(held);
    if (line.empty() || line.rfind("DLV", 0) == 0 || line.back() == '?' ||
        line.rfind("Best model:", 0) == 0) {
      return;
    }
    constexpr std::string_view kCost = "Cost ([Weight:Level]):";
    if (line.rfind(kCost, 0) == 0) {
      out.cost = std::string(trim(line.substr(kCost.size())));
      return;
    }
    if (line.back() == '.') line.remove_suffix(1);
    out.answers.emplace_back(line);
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '{') {
      bool best = trim(pending).rfind("Best model:", 0) == 0;
      pending.clear();
      int depth = 0;
      std::size_t start = i + 1;
      for (; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        if (text[i] == '}' && --depth == 0) break;
      }
      if (i >= text.size()) {
        throw InputError("solver_output", "unbalanced braces in solver output");
      }
      SolverModel m = make_model(text.substr(start, i - start));
      if (best) {
        out.best = m;
      }
      out.models.push_back(std::move(m));
      ++i;
    } else if (c == '}') {
      throw InputError("solver_output", "unbalanced braces in solver output");
    } else if (c == '\n') {
      flush_line();
      ++i;
    } else {
      pending += c;
      ++i;
    }
  }
  flush_line();
  return out;
}

std::optional<std::string> find_asp_solver(const std::string& explicit_path) {
  std::string path = explicit_path;
  if (path.empty()) {
    const char* env = std::getenv("INCMETER_ASP_SOLVER");
    if (env != nullptr) path = env;
  }
  if (path.empty() || ::access(path.c_str(), X_OK) != 0) return std::nullopt;
  return path;
}

SolverResult run_external_solver(const AspProgram& program,
                                 const std::string& solver_path,
                                 const std::vector<std::string>& flags) {
  if (::access(solver_path.c_str(), X_OK) != 0) {
    throw InputError("solver_unavailable",
                     "ASP solver not executable: " + solver_path);
  }
  bool with_queries = std::any_of(flags.begin(), flags.end(), [](const auto& f) {
    return f == "-brave" || f == "-cautious";
  });
  char path[] = "/tmp/incmeter_XXXXXX";
  int fd = ::mkstemp(path);
  if (fd < 0) throw InputError("solver_unavailable", "cannot create temp file");
  ::close(fd);
  {
    std::ofstream f(path);
    f << program.to_text(with_queries);
  }
  std::string cmd = shell_quote(solver_path);
  for (const auto& f : flags) cmd += " " + shell_quote(f);
  cmd += " " + shell_quote(path) + " 2>&1";
  std::string output;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    std::remove(path);
    throw InputError("solver_unavailable", "cannot start " + solver_path);
  }
  char buf[4096];
  std::size_t n = 0;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  ::pclose(pipe);
  std::remove(path);

  SolverResult result;
  result.output = parse_solver_output(output);
  const SolverModel* chosen = nullptr;
  if (result.output.best) {
    chosen = &*result.output.best;
  } else {
    for (const auto& m : result.output.models) {
      if (m.dist && (chosen == nullptr || *m.dist < *chosen->dist)) chosen = &m;
    }
  }
  if (chosen != nullptr) {
    result.dist = chosen->dist;
    result.deleted = chosen->deleted;
  }
  return result;
}

}  // namespace incmeter
