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

// Attribute-based repairs that overwrite values with the null token. Null
// satisfies no join and no comparison, so nulling a cell kills exactly the
// violating assignments in which that cell is sensitive (a constant, a
// repeated variable or a compared variable). Minimum change sets are thus
// minimum hitting sets over per-assignment cell sets.

#ifndef INCMETER_NULLREP_HPP_
#define INCMETER_NULLREP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "incmeter/exact.hpp"
#include "incmeter/hitting_set.hpp"
#include "incmeter/measures.hpp"
#include "incmeter/model.hpp"
#include "incmeter/repair.hpp"

namespace incmeter {

struct NullRepairOptions {
  std::size_t max_cells = 24;  // candidate cells the search may consider
  std::uint64_t node_budget = 10'000'000;
};

// Consistency where nulls never join and never compare.
bool eval_with_nulls(const Instance& instance, const ConstraintSet& constraints);

// Copy of `instance` with the given cells set to null. Throws InputError on
// an unknown tid, a position out of range or a cell that is already null.
Instance apply_null_changes(const Instance& instance,
                            const std::vector<CellChange>& changes);

// Candidate cells (sorted) and, per violating assignment, the indices of its
// sensitive cells. `irreparable` is set when some violating assignment has
// no sensitive cell, e.g. a constraint over a single atom of distinct
// variables.
struct NullConflicts {
  std::vector<CellChange> cells;
  hs::SetSystem system;
  bool irreparable = false;
};

NullConflicts null_conflicts(const Instance& instance,
                             const ConstraintSet& constraints);

// Minimum-cardinality change set; std::nullopt when no null repair exists.
// Throws ResourceLimitError past `max_cells` candidate cells.
std::optional<NullRepairSolution> min_null_changes(
    const Instance& instance, const ConstraintSet& constraints,
    const NullRepairOptions& options = {});

// Inclusion-minimal change sets, sorted; empty when irreparable.
std::vector<std::vector<CellChange>> enumerate_null_s_repairs(
    const Instance& instance, const ConstraintSet& constraints,
    const EnumerationOptions& options = {});

// |minimum change set| / atv(D); 1 when irreparable, 0 on the empty instance.
MeasureReport inc_deg_g3_null(const Instance& instance,
                              const ConstraintSet& constraints,
                              const NullRepairOptions& options = {});

}  // namespace incmeter

#endif  // INCMETER_NULLREP_HPP_
