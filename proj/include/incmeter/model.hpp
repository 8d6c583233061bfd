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

// Relational schemas, instances with tuple ids, and denial constraints.

#ifndef INCMETER_MODEL_HPP_
#define INCMETER_MODEL_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace incmeter {

// Globally unique tuple identifier within one instance.
struct Tid {
  std::uint32_t value = 0;

  friend auto operator<=>(const Tid&, const Tid&) = default;
};

struct TidHash {
  std::size_t operator()(Tid t) const noexcept {
    return std::hash<std::uint32_t>{}(t.value);
  }
};

using TidSet = std::vector<Tid>;  // sorted, unique

// Reserved token for an attribute value replaced by null. Never accepted in
// input data; only produced by attribute-based repairs.
inline constexpr std::string_view kNullToken = "NULL";

struct PredicateDecl {
  std::string name;
  std::vector<std::string> attributes;

  std::size_t arity() const { return attributes.size(); }
};

class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<PredicateDecl> predicates);

  // Throws InputError on duplicate name, empty or duplicate attribute list.
  void add(PredicateDecl decl);

  const PredicateDecl* find(std::string_view name) const;
  // Declaration order.
  const std::vector<PredicateDecl>& predicates() const { return preds_; }
  // Ascending lexicographic names; this is the tid assignment order.
  std::vector<std::string> sorted_names() const;

 private:
  std::vector<PredicateDecl> preds_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

// Parses `Pred(Attr1, Attr2, ...)` declarations, one per line, `#` comments.
Schema parse_schema(std::string_view text);

struct Tuple {
  Tid tid;
  std::string predicate;
  std::vector<std::string> values;
};

class Instance {
 public:
  enum class Nulls { kForbidden, kAllowed };

  Instance() = default;
  // Validates: predicates and arities against the schema, unique tids, set
  // semantics (skipped when nulls are allowed), no null token unless allowed,
  // endogenous tids present. Tuples are stored in ascending tid order.
  Instance(Schema schema, std::vector<Tuple> tuples,
           std::vector<Tid> endogenous = {}, Nulls nulls = Nulls::kForbidden);

  const Schema& schema() const { return schema_; }
  const std::vector<Tuple>& tuples() const { return tuples_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }

  const Tuple* find(Tid tid) const;
  std::optional<Tid> find_tid(std::string_view predicate,
                              const std::vector<std::string>& values) const;
  // Indices into tuples() for one predicate, in tid order.
  const std::vector<std::size_t>& rows_of(std::string_view predicate) const;

  TidSet tids() const;
  Tid max_tid() const;
  // Sum of arities over all tuples.
  std::size_t attribute_value_count() const;

  // Explicit endogenous partition; empty means every tuple is endogenous.
  const TidSet& endogenous() const { return endogenous_; }
  bool has_endogenous_partition() const { return !endogenous_.empty(); }
  TidSet effective_endogenous() const;

  bool allows_nulls() const { return nulls_ == Nulls::kAllowed; }

 private:
  Schema schema_;
  std::vector<Tuple> tuples_;
  TidSet endogenous_;
  Nulls nulls_ = Nulls::kForbidden;
  std::unordered_map<Tid, std::size_t, TidHash> by_tid_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_pred_;
};

// Loads one CSV stream per predicate. Tids are assigned 1, 2, ... scanning
// predicates in ascending name order and rows in file order. Predicates of
// the schema without a stream are empty.
Instance load_instance(const std::map<std::string, std::istream*>& csv_sources,
                       const Schema& schema,
                       const std::vector<Tid>& endogenous = {});

// Reads `<pred>.csv` for each schema predicate from `directory` (missing
// files are empty relations) and `endogenous.txt` when present.
Instance load_instance_dir(const std::string& directory, const Schema& schema,
                           const std::string& endogenous_path = {});

std::vector<Tid> parse_tid_list(std::string_view text);

struct Term {
  enum class Kind { kVariable, kConstant };
  Kind kind = Kind::kVariable;
  std::string text;

  bool is_variable() const { return kind == Kind::kVariable; }
  static Term variable(std::string name) {
    return {Kind::kVariable, std::move(name)};
  }
  static Term constant(std::string value) {
    return {Kind::kConstant, std::move(value)};
  }
  friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
  std::string predicate;
  std::vector<Term> terms;
  friend bool operator==(const Atom&, const Atom&) = default;
};

enum class CmpOp { kEq, kNe, kLt, kLe, kGt, kGe };

std::string_view to_string(CmpOp op);

struct Comparison {
  Term lhs;
  CmpOp op = CmpOp::kEq;
  Term rhs;
  friend bool operator==(const Comparison&, const Comparison&) = default;
};

// not exists vars: atom_1 and ... and atom_m and comparisons.
struct DenialConstraint {
  std::string name;
  std::vector<Atom> atoms;
  std::vector<Comparison> comparisons;
};

class ConstraintSet {
 public:
  ConstraintSet() = default;
  // Validates every constraint against the schema (see parse_constraints).
  ConstraintSet(std::vector<DenialConstraint> constraints,
                const Schema& schema);

  const std::vector<DenialConstraint>& constraints() const {
    return constraints_;
  }
  std::size_t size() const { return constraints_.size(); }
  bool empty() const { return constraints_.empty(); }
  // Largest number of relational atoms in one constraint; 0 if empty.
  std::size_t max_atoms() const;

 private:
  std::vector<DenialConstraint> constraints_;
};

// Grammar, one declaration per line, `#` starts a comment:
//   dc <name> : !exists <atom> ("," <atom>)* ("," <cmp>)*
//   fd <name> : <Pred> : <Attr> ("," <Attr>)* -> <Attr>
// Lowercase-initial identifiers are variables; quoted strings and bare
// uppercase/numeric tokens are constants.
ConstraintSet parse_constraints(std::string_view text, const Schema& schema);

// Order comparison on constants: numeric when both parse as integers,
// lexicographic otherwise. Null never compares.
bool compare_values(std::string_view lhs, CmpOp op, std::string_view rhs);

bool check_consistency(const Instance& instance,
                       const ConstraintSet& constraints);

}  // namespace incmeter

#endif  // INCMETER_MODEL_HPP_
