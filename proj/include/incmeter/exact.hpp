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

// Exact repair computations: minimum hitting sets of the conflict
// hypergraph (cardinality repairs) and enumeration of subset and
// cardinality repairs at small scale.

#ifndef INCMETER_EXACT_HPP_
#define INCMETER_EXACT_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>

#include "incmeter/conflicts.hpp"
#include "incmeter/hitting_set.hpp"
#include "incmeter/model.hpp"
#include "incmeter/repair.hpp"

namespace incmeter {

struct ExactOptions {
  std::uint64_t node_budget = 10'000'000;
};

struct EnumerationOptions {
  std::size_t max_tuples = 16;
};

// Dense re-indexing of the tuples that occur in some edge, in tid order.
struct IndexedHypergraph {
  hs::SetSystem system;
  TidSet elements;  // index -> tid
};

IndexedHypergraph index_hypergraph(const ConflictHypergraph& hg);

// Exact minimum hitting set; throws ResourceLimitError past the node budget.
RepairSolution min_hitting_set(const ConflictHypergraph& hg,
                               const ExactOptions& options = {});

// Exhaustive oracle; at most 22 tuples may occur in edges.
RepairSolution brute_force_min_hitting_set(const ConflictHypergraph& hg);

RepairSet enumerate_s_repairs(const ConflictHypergraph& hg,
                              const EnumerationOptions& options = {});
RepairSet enumerate_s_repairs(const Instance& instance,
                              const ConstraintSet& constraints,
                              const EnumerationOptions& options = {});

RepairSet enumerate_c_repairs(const ConflictHypergraph& hg,
                              const EnumerationOptions& options = {});
RepairSet enumerate_c_repairs(const Instance& instance,
                              const ConstraintSet& constraints,
                              const EnumerationOptions& options = {});

// Minimum hitting set using only `endogenous` tuples; std::nullopt when some
// conflict has no endogenous member (no endogenous repair exists).
std::optional<RepairSolution> min_endogenous_hitting_set(
    const ConflictHypergraph& hg, TidSet endogenous,
    const ExactOptions& options = {});

}  // namespace incmeter

#endif  // INCMETER_EXACT_HPP_
