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

// Tuple insertions and deletions, incremental conflict maintenance and the
// bounds relating the cardinality-repair degree before and after an update.

#ifndef INCMETER_UPDATES_HPP_
#define INCMETER_UPDATES_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "incmeter/conflicts.hpp"
#include "incmeter/exact.hpp"
#include "incmeter/model.hpp"
#include "incmeter/rational.hpp"

namespace incmeter {

struct Insertion {
  std::string predicate;
  std::vector<std::string> values;
};

struct UpdateDelta {
  std::vector<Insertion> insertions;
  std::vector<Tid> deletions;

  bool empty() const { return insertions.empty() && deletions.empty(); }
};

// One change per line, `#` comments:
//   + Pred(v1, v2, ...)
//   - <tid>
// Values may be double-quoted to include commas or spaces.
UpdateDelta parse_delta(std::string_view text, const Schema& schema);

// Deletions are applied first. Inserted tuples get tids max_tid + 1, ... in
// list order and are exogenous when the instance has an explicit endogenous
// partition. Throws InputError on an unknown or repeated deletion tid and on
// an insertion already present. `inserted` receives the new tids.
Instance apply_update(const Instance& instance, const UpdateDelta& delta,
                      TidSet* inserted = nullptr);

// Conflict hypergraph of apply_update(before, delta) computed from `hg`:
// edges through deleted tuples are dropped and only assignments that use at
// least one inserted tuple are enumerated.
ConflictHypergraph incremental_hypergraph(const ConflictHypergraph& hg,
                                          const Instance& before,
                                          const UpdateDelta& delta,
                                          const ConstraintSet& constraints);

enum class UpdateDirection { kInsert, kDelete };

std::string_view to_string(UpdateDirection d);

struct BoundCheck {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

struct BoundCheckReport {
  UpdateDirection direction = UpdateDirection::kInsert;
  // 0 < epsilon < 1; otherwise no bound is evaluated.
  bool applicable = false;
  Rational epsilon;  // changed tuples / |D|
  Rational before;
  Rational after;
  // Deletions only: some deleted tuple lies on a conflict edge of D.
  bool deleted_participate = false;
  std::vector<BoundCheck> bounds;

  bool all_hold() const;
};

// Insertion-only delta. Bounds, with eps = m / |D|:
//   after  <= before + 1 / (1 + 1/eps)
//   before <= after / (1 - eps)
BoundCheckReport check_insertion_bounds(const Instance& instance,
                                        const ConstraintSet& constraints,
                                        const UpdateDelta& delta,
                                        const ExactOptions& options = {});

// Deletion-only delta. Bounds, with eps = k / |D|:
//   after  <= before / (1 - eps)
//   before <= after / (1 - eps) + eps
// and, when no deleted tuple participates in a conflict,
//   before <= after / (1 - eps).
BoundCheckReport check_deletion_bounds(const Instance& instance,
                                       const ConstraintSet& constraints,
                                       const UpdateDelta& delta,
                                       const ExactOptions& options = {});

// Mixed deltas are checked as their deletions followed by their insertions.
// Returns one report per non-empty part.
std::vector<BoundCheckReport> check_update_bounds(
    const Instance& instance, const ConstraintSet& constraints,
    const UpdateDelta& delta, const ExactOptions& options = {});

}  // namespace incmeter

#endif  // INCMETER_UPDATES_HPP_
