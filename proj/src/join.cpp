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

#include "incmeter/join.hpp"

#include <algorithm>
#include <map>

namespace incmeter {
namespace {

constexpr std::size_t kNoProbe = static_cast<std::size_t>(-1);

bool is_null(const std::string& v) { return v == kNullToken; }

}  // namespace

BodyMatcher::BodyMatcher(const Instance& instance,
                         const DenialConstraint& constraint)
    : instance_(&instance), constraint_(&constraint) {
  std::map<std::string, std::size_t> var_ids;
  std::map<std::string, std::size_t> occurrences;
  for (const Atom& atom : constraint.atoms) {
    for (const Term& t : atom.terms) {
      if (t.is_variable()) ++occurrences[t.text];
    }
  }
  std::map<std::string, bool> in_comparison;
  for (const Comparison& c : constraint.comparisons) {
    if (c.lhs.is_variable()) in_comparison[c.lhs.text] = true;
    if (c.rhs.is_variable()) in_comparison[c.rhs.text] = true;
  }

  // Atom index after which each variable is bound.
  std::vector<std::size_t> bound_at;
  atoms_.resize(constraint.atoms.size());
  sensitive_.resize(constraint.atoms.size());
  for (std::size_t i = 0; i < constraint.atoms.size(); ++i) {
    const Atom& atom = constraint.atoms[i];
    CompiledAtom& ca = atoms_[i];
    ca.rows = &instance.rows_of(atom.predicate);
    for (std::size_t j = 0; j < atom.terms.size(); ++j) {
      const Term& t = atom.terms[j];
      Slot s;
      if (!t.is_variable()) {
        s.is_constant = true;
        s.constant = t.text;
        if (ca.probe == kNoProbe) ca.probe = j;
        sensitive_[i].push_back(true);
      } else {
        auto [it, fresh] = var_ids.try_emplace(t.text, var_ids.size());
        s.var = it->second;
        s.binds = fresh;
        if (fresh) {
          bound_at.push_back(i);
        } else if (ca.probe == kNoProbe && bound_at[s.var] < i) {
          ca.probe = j;
        }
        sensitive_[i].push_back(occurrences[t.text] > 1 ||
                                in_comparison.count(t.text) > 0);
      }
      ca.slots.push_back(std::move(s));
    }
    if (ca.probe != kNoProbe) {
      for (std::size_t row : *ca.rows) {
        const std::string& v = instance.tuples()[row].values[ca.probe];
        if (!is_null(v)) ca.index[v].push_back(row);
      }
    }
  }
  num_vars_ = var_ids.size();

  auto compile_term = [&](const Term& t, std::size_t& ready) {
    Slot s;
    if (t.is_variable()) {
      s.var = var_ids.at(t.text);
      ready = std::max(ready, bound_at[s.var] + 1);
    } else {
      s.is_constant = true;
      s.constant = t.text;
    }
    return s;
  };
  for (const Comparison& c : constraint.comparisons) {
    std::size_t ready = 0;  // 0 = ground, k = after atom k-1
    CompiledCmp cc{compile_term(c.lhs, ready), c.op, compile_term(c.rhs, ready)};
    if (ready == 0) {
      ground_checks_.push_back(std::move(cc));
    } else {
      atoms_[ready - 1].checks.push_back(std::move(cc));
    }
  }
}

bool BodyMatcher::for_each(const Visitor& visit,
                           const RowFilter& filter) const {
  auto value = [](const Slot& s) -> const std::string& { return s.constant; };
  for (const CompiledCmp& c : ground_checks_) {
    if (!compare_values(value(c.lhs), c.op, value(c.rhs))) return true;
  }
  if (atoms_.empty()) return true;
  std::vector<std::size_t> rows(atoms_.size());
  std::vector<const std::string*> binding(num_vars_, nullptr);
  return descend(0, rows, binding, visit, filter);
}

bool BodyMatcher::satisfiable(const RowFilter& filter) const {
  bool found = false;
  for_each(
      [&](Assignment) {
        found = true;
        return false;
      },
      filter);
  return found;
}

bool BodyMatcher::descend(std::size_t depth, std::vector<std::size_t>& rows,
                          std::vector<const std::string*>& binding,
                          const Visitor& visit,
                          const RowFilter& filter) const {
  const CompiledAtom& ca = atoms_[depth];
  const std::vector<std::size_t>* candidates = ca.rows;
  if (ca.probe != kNoProbe) {
    const Slot& ps = ca.slots[ca.probe];
    const std::string& key = ps.is_constant ? ps.constant : *binding[ps.var];
    auto it = ca.index.find(key);
    if (it == ca.index.end()) return true;
    candidates = &it->second;
  }
  const auto& tuples = instance_->tuples();
  auto slot_value = [&](const Slot& s) -> const std::string& {
    return s.is_constant ? s.constant : *binding[s.var];
  };

  for (std::size_t row : *candidates) {
    if (filter && !filter(depth, row)) continue;
    const std::vector<std::string>& vals = tuples[row].values;
    bool ok = true;
    for (std::size_t j = 0; j < ca.slots.size(); ++j) {
      const Slot& s = ca.slots[j];
      if (s.binds) {
        binding[s.var] = &vals[j];
        continue;
      }
      const std::string& expected = slot_value(s);
      if (is_null(vals[j]) || is_null(expected) || vals[j] != expected) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const CompiledCmp& c : ca.checks) {
        if (!compare_values(slot_value(c.lhs), c.op, slot_value(c.rhs))) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      rows[depth] = row;
      bool keep_going = depth + 1 == atoms_.size()
                            ? visit(Assignment(rows))
                            : descend(depth + 1, rows, binding, visit, filter);
      if (!keep_going) return false;
    }
  }
  return true;
}

}  // namespace incmeter
