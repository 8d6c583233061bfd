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

#include "incmeter/model.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "incmeter/errors.hpp"
#include "incmeter/join.hpp"

namespace incmeter {
namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
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

std::string_view strip_comment(std::string_view line) {
  auto pos = line.find('#');
  return pos == std::string_view::npos ? line : line.substr(0, pos);
}

std::optional<long long> parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  long long v = 0;
  const char* first = s.data();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// RFC 4180-style record splitting: quoted fields may contain commas, quotes
// doubled, and newlines.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  bool next(std::vector<std::string>& fields) {
    fields.clear();
    std::string field;
    bool in_quotes = false;
    bool any = false;
    char c;
    while (in_.get(c)) {
      any = true;
      if (in_quotes) {
        if (c == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') ++line_;
          field.push_back(c);
        }
        continue;
      }
      if (c == '"') {
        in_quotes = true;
      } else if (c == ',') {
        fields.push_back(std::move(field));
        field.clear();
      } else if (c == '\r') {
        // tolerate CRLF
      } else if (c == '\n') {
        ++line_;
        fields.push_back(std::move(field));
        return true;
      } else {
        field.push_back(c);
      }
    }
    if (!any) return false;
    fields.push_back(std::move(field));
    return true;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

bool blank_record(const std::vector<std::string>& fields) {
  return fields.size() == 1 && trim(fields[0]).empty();
}

}  // namespace

Schema::Schema(std::vector<PredicateDecl> predicates) {
  for (auto& p : predicates) add(std::move(p));
}

void Schema::add(PredicateDecl decl) {
  if (!is_identifier(decl.name)) {
    throw InputError("bad_schema", "invalid predicate name '" + decl.name + "'");
  }
  if (index_.count(decl.name)) {
    throw InputError("bad_schema", "duplicate predicate '" + decl.name + "'");
  }
  if (decl.attributes.empty()) {
    throw InputError("bad_schema",
                     "predicate '" + decl.name + "' needs at least one attribute");
  }
  std::set<std::string> seen;
  for (const auto& a : decl.attributes) {
    if (!is_identifier(a) || !seen.insert(a).second) {
      throw InputError("bad_schema", "invalid or duplicate attribute '" + a +
                                         "' in predicate '" + decl.name + "'");
    }
  }
  index_.emplace(decl.name, preds_.size());
  preds_.push_back(std::move(decl));
}

const PredicateDecl* Schema::find(std::string_view name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &preds_[it->second];
}

std::vector<std::string> Schema::sorted_names() const {
  std::vector<std::string> names;
  for (const auto& [name, _] : index_) names.push_back(name);
  return names;
}

Schema parse_schema(std::string_view text) {
  Schema schema;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto open = line.find('(');
    if (open == std::string_view::npos || line.back() != ')') {
      throw ParseError(line_no, 1, "expected Pred(Attr, ...)");
    }
    PredicateDecl decl;
    decl.name = std::string(trim(line.substr(0, open)));
    std::string_view inner = line.substr(open + 1, line.size() - open - 2);
    std::size_t start = 0;
    while (start <= inner.size()) {
      auto comma = inner.find(',', start);
      auto part = trim(inner.substr(
          start, comma == std::string_view::npos ? std::string_view::npos
                                                 : comma - start));
      if (part.empty()) {
        throw ParseError(line_no, open + 2 + start, "empty attribute name");
      }
      decl.attributes.emplace_back(part);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    schema.add(std::move(decl));
  }
  return schema;
}

Instance::Instance(Schema schema, std::vector<Tuple> tuples,
                   std::vector<Tid> endogenous, Nulls nulls)
    : schema_(std::move(schema)), tuples_(std::move(tuples)), nulls_(nulls) {
  std::sort(tuples_.begin(), tuples_.end(),
            [](const Tuple& a, const Tuple& b) { return a.tid < b.tid; });
  std::set<std::pair<std::string, std::vector<std::string>>> seen;
  for (std::size_t i = 0; i < tuples_.size(); ++i) {
    const Tuple& t = tuples_[i];
    if (t.tid.value == 0) {
      throw InputError("bad_tid", "tuple ids must be positive");
    }
    const PredicateDecl* decl = schema_.find(t.predicate);
    if (decl == nullptr) {
      throw InputError("unknown_predicate",
                       "unknown predicate '" + t.predicate + "'");
    }
    if (t.values.size() != decl->arity()) {
      throw InputError("arity_mismatch",
                       "tuple " + std::to_string(t.tid.value) + " of '" +
                           t.predicate + "' has " +
                           std::to_string(t.values.size()) + " values, expected " +
                           std::to_string(decl->arity()));
    }
    if (!by_tid_.emplace(t.tid, i).second) {
      throw InputError("duplicate_tid",
                       "duplicate tuple id " + std::to_string(t.tid.value));
    }
    if (nulls_ == Nulls::kForbidden) {
      for (const auto& v : t.values) {
        if (v == kNullToken) {
          throw InputError("reserved_null", "value NULL is reserved (tuple " +
                                                std::to_string(t.tid.value) + ")");
        }
      }
      if (!seen.emplace(t.predicate, t.values).second) {
        throw InputError("duplicate_tuple",
                         "duplicate tuple in '" + t.predicate + "' (tid " +
                             std::to_string(t.tid.value) + ")");
      }
    }
    by_pred_[t.predicate].push_back(i);
  }
  std::sort(endogenous.begin(), endogenous.end());
  endogenous.erase(std::unique(endogenous.begin(), endogenous.end()),
                   endogenous.end());
  for (Tid t : endogenous) {
    if (!by_tid_.count(t)) {
      throw InputError("unknown_tid", "endogenous tid " +
                                          std::to_string(t.value) +
                                          " not present in the instance");
    }
  }
  endogenous_ = std::move(endogenous);
}

const Tuple* Instance::find(Tid tid) const {
  auto it = by_tid_.find(tid);
  return it == by_tid_.end() ? nullptr : &tuples_[it->second];
}

std::optional<Tid> Instance::find_tid(
    std::string_view predicate, const std::vector<std::string>& values) const {
  for (std::size_t row : rows_of(predicate)) {
    if (tuples_[row].values == values) return tuples_[row].tid;
  }
  return std::nullopt;
}

const std::vector<std::size_t>& Instance::rows_of(
    std::string_view predicate) const {
  static const std::vector<std::size_t> kEmpty;
  auto it = by_pred_.find(predicate);
  return it == by_pred_.end() ? kEmpty : it->second;
}

TidSet Instance::tids() const {
  TidSet out;
  out.reserve(tuples_.size());
  for (const auto& t : tuples_) out.push_back(t.tid);
  return out;
}

Tid Instance::max_tid() const {
  return tuples_.empty() ? Tid{0} : tuples_.back().tid;
}

std::size_t Instance::attribute_value_count() const {
  std::size_t n = 0;
  for (const auto& t : tuples_) n += t.values.size();
  return n;
}

TidSet Instance::effective_endogenous() const {
  return endogenous_.empty() ? tids() : endogenous_;
}

Instance load_instance(const std::map<std::string, std::istream*>& csv_sources,
                       const Schema& schema,
                       const std::vector<Tid>& endogenous) {
  for (const auto& [pred, _] : csv_sources) {
    if (schema.find(pred) == nullptr) {
      throw InputError("unknown_predicate",
                       "data given for unknown predicate '" + pred + "'");
    }
  }
  std::vector<Tuple> tuples;
  std::uint32_t next = 1;
  for (const std::string& name : schema.sorted_names()) {
    auto it = csv_sources.find(name);
    if (it == csv_sources.end() || it->second == nullptr) continue;
    const PredicateDecl& decl = *schema.find(name);
    CsvReader reader(*it->second);
    std::vector<std::string> fields;
    bool have_header = false;
    while (reader.next(fields)) {
      if (blank_record(fields)) continue;
      if (!have_header) {
        std::vector<std::string> header;
        for (const auto& f : fields) header.emplace_back(trim(f));
        if (header != decl.attributes) {
          throw InputError("column_mismatch",
                           "header of '" + name + "' does not match attributes "
                           "declared in the schema");
        }
        have_header = true;
        continue;
      }
      if (fields.size() != decl.arity()) {
        throw InputError("column_mismatch",
                         "row " + std::to_string(reader.line()) + " of '" + name +
                             "' has " + std::to_string(fields.size()) +
                             " columns, expected " + std::to_string(decl.arity()));
      }
      tuples.push_back(Tuple{Tid{next++}, name, fields});
    }
  }
  return Instance(schema, std::move(tuples), endogenous);
}

Instance load_instance_dir(const std::string& directory, const Schema& schema,
                           const std::string& endogenous_path) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(directory)) {
    throw InputError("missing_file", "data directory '" + directory +
                                         "' does not exist");
  }
  std::vector<std::unique_ptr<std::ifstream>> files;
  std::map<std::string, std::istream*> sources;
  for (const auto& decl : schema.predicates()) {
    fs::path p = fs::path(directory) / (decl.name + ".csv");
    if (!fs::exists(p)) continue;
    files.push_back(std::make_unique<std::ifstream>(p, std::ios::binary));
    if (!*files.back()) {
      throw InputError("missing_file", "cannot open '" + p.string() + "'");
    }
    sources[decl.name] = files.back().get();
  }
  std::vector<Tid> endo;
  std::string endo_path = endogenous_path;
  if (endo_path.empty() && fs::exists(fs::path(directory) / "endogenous.txt")) {
    endo_path = (fs::path(directory) / "endogenous.txt").string();
  }
  if (!endo_path.empty()) {
    std::ifstream in(endo_path);
    if (!in) throw InputError("missing_file", "cannot open '" + endo_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    endo = parse_tid_list(buf.str());
  }
  return load_instance(sources, schema, endo);
}

std::vector<Tid> parse_tid_list(std::string_view text) {
  std::vector<Tid> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto v = parse_integer(line);
    if (!v || *v <= 0 || *v > static_cast<long long>(UINT32_MAX)) {
      throw ParseError(line_no, 1, "expected a positive tuple id");
    }
    out.push_back(Tid{static_cast<std::uint32_t>(*v)});
  }
  return out;
}

std::string_view to_string(CmpOp op) {
  switch (op) {
    case CmpOp::kEq: return "=";
    case CmpOp::kNe: return "!=";
    case CmpOp::kLt: return "<";
    case CmpOp::kLe: return "<=";
    case CmpOp::kGt: return ">";
    case CmpOp::kGe: return ">=";
  }
  return "?";
}

bool compare_values(std::string_view lhs, CmpOp op, std::string_view rhs) {
  if (lhs == kNullToken || rhs == kNullToken) return false;
  switch (op) {
    case CmpOp::kEq: return lhs == rhs;
    case CmpOp::kNe: return lhs != rhs;
    default: break;
  }
  int order;
  auto a = parse_integer(lhs);
  auto b = parse_integer(rhs);
  if (a && b) {
    order = *a < *b ? -1 : (*a > *b ? 1 : 0);
  } else {
    int c = lhs.compare(rhs);
    order = c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  switch (op) {
    case CmpOp::kLt: return order < 0;
    case CmpOp::kLe: return order <= 0;
    case CmpOp::kGt: return order > 0;
    case CmpOp::kGe: return order >= 0;
    default: return false;
  }
}

ConstraintSet::ConstraintSet(std::vector<DenialConstraint> constraints,
                             const Schema& schema)
    : constraints_(std::move(constraints)) {
  std::set<std::string> names;
  for (const auto& dc : constraints_) {
    if (!names.insert(dc.name).second) {
      throw InputError("duplicate_constraint",
                       "duplicate constraint name '" + dc.name + "'");
    }
    if (dc.atoms.empty()) {
      throw InputError("empty_constraint",
                       "constraint '" + dc.name + "' has no relational atom");
    }
    std::set<std::string> vars;
    for (const auto& atom : dc.atoms) {
      const PredicateDecl* decl = schema.find(atom.predicate);
      if (decl == nullptr) {
        throw InputError("unknown_predicate", "constraint '" + dc.name +
                                                  "': unknown predicate '" +
                                                  atom.predicate + "'");
      }
      if (decl->arity() != atom.terms.size()) {
        throw InputError("arity_mismatch",
                         "constraint '" + dc.name + "': " + atom.predicate +
                             " takes " + std::to_string(decl->arity()) +
                             " arguments, got " + std::to_string(atom.terms.size()));
      }
      for (const auto& t : atom.terms) {
        if (t.is_variable()) vars.insert(t.text);
      }
    }
    for (const auto& c : dc.comparisons) {
      for (const Term* t : {&c.lhs, &c.rhs}) {
        if (t->is_variable() && !vars.count(t->text)) {
          throw InputError("unsafe_variable", "constraint '" + dc.name +
                                                  "': unsafe variable " + t->text);
        }
      }
    }
  }
}

std::size_t ConstraintSet::max_atoms() const {
  std::size_t d = 0;
  for (const auto& dc : constraints_) d = std::max(d, dc.atoms.size());
  return d;
}

bool check_consistency(const Instance& instance,
                       const ConstraintSet& constraints) {
  for (const auto& dc : constraints.constraints()) {
    if (BodyMatcher(instance, dc).satisfiable()) return false;
  }
  return true;
}

}  // namespace incmeter
