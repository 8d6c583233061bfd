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

#ifndef INCMETER_JOIN_HPP_
#define INCMETER_JOIN_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "incmeter/model.hpp"

namespace incmeter {

// Nested-loop evaluation of one denial-constraint body over an instance.
//
// Atoms are joined left to right. Each variable is bound at its first
// occurrence and checked for equality at every later one; a comparison is
// evaluated as soon as its last variable is bound. When an atom has a
// position that is a constant or an already bound variable, candidate rows
// come from a hash index on that position instead of a full scan.
//
// The null token never equals anything (including itself) and fails every
// comparison, so no assignment joins or compares through a null.
class BodyMatcher {
 public:
  // Row indices (into instance.tuples()), one per atom.
  using Assignment = std::span<const std::size_t>;
  // Return false to stop the enumeration early.
  using Visitor = std::function<bool(Assignment)>;
  // Restricts the rows atom `atom` may map to.
  using RowFilter = std::function<bool(std::size_t atom, std::size_t row)>;

  BodyMatcher(const Instance& instance, const DenialConstraint& constraint);

  // Returns false if the visitor stopped the enumeration.
  bool for_each(const Visitor& visit, const RowFilter& filter = {}) const;
  bool satisfiable(const RowFilter& filter = {}) const;

  // positions[i][j] is true when the value at position j of atom i matters
  // for satisfaction: a constant, a variable occurring more than once in
  // the atoms, or a variable used in a comparison.
  const std::vector<std::vector<bool>>& sensitive_positions() const {
    return sensitive_;
  }

  const DenialConstraint& constraint() const { return *constraint_; }

 private:
  struct Slot {
    bool is_constant = false;
    bool binds = false;  // first occurrence of a variable
    std::size_t var = 0;
    std::string constant;
  };
  struct CompiledCmp {
    Slot lhs;
    CmpOp op = CmpOp::kEq;
    Slot rhs;
  };
  struct CompiledAtom {
    std::vector<Slot> slots;
    const std::vector<std::size_t>* rows = nullptr;
    // Position used for index lookup, or npos for a full scan.
    std::size_t probe = static_cast<std::size_t>(-1);
    std::unordered_map<std::string, std::vector<std::size_t>> index;
    std::vector<CompiledCmp> checks;  // evaluated after this atom binds
  };

  bool descend(std::size_t depth, std::vector<std::size_t>& rows,
               std::vector<const std::string*>& binding, const Visitor& visit,
               const RowFilter& filter) const;

  const Instance* instance_;
  const DenialConstraint* constraint_;
  std::size_t num_vars_ = 0;
  std::vector<CompiledAtom> atoms_;
  std::vector<CompiledCmp> ground_checks_;
  std::vector<std::vector<bool>> sensitive_;
};

}  // namespace incmeter

#endif  // INCMETER_JOIN_HPP_
