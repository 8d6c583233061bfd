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

// Hitting-set primitives over a dense element range [0, n). Callers map
// their own element ids (tuple ids, cells) onto indices; index order is the
// tie-break order everywhere below.

#ifndef INCMETER_HITTING_SET_HPP_
#define INCMETER_HITTING_SET_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace incmeter::hs {

using Element = std::uint32_t;
using Set = std::vector<Element>;  // sorted, unique

struct SetSystem {
  std::size_t num_elements = 0;
  std::vector<Set> sets;
};

struct SearchStats {
  std::uint64_t nodes = 0;
};

// Minimum-cardinality hitting set by bounded search tree: branch on an unhit
// set of fewest still-allowed elements, trying its elements by descending
// residual degree; branch i takes element i and forbids elements 1..i-1.
// Prunes with a greedy disjoint-set packing lower bound against the best
// cover so far, seeded with `initial_upper` (must be a valid hitting set).
// Throws ResourceLimitError once more than `node_budget` nodes are expanded.
Set minimum_hitting_set(const SetSystem& system, std::uint64_t node_budget,
                        Set initial_upper, SearchStats* stats = nullptr);

// Exhaustive search in increasing cardinality, combinations in lexicographic
// order, so the result is the lexicographically smallest minimum hitting
// set. Throws ResourceLimitError if more than `max_active` elements occur in
// some set.
Set brute_force_minimum(const SetSystem& system, std::size_t max_active = 22);

// All inclusion-minimal hitting sets, sorted. Elements must fit in 64 bits
// of mask (throws ResourceLimitError otherwise).
std::vector<Set> minimal_transversals(const SetSystem& system);

// Take every element of each set not yet hit, in the given set order.
Set take_whole_sets(const SetSystem& system);

bool hits_all(const SetSystem& system, const Set& chosen);

}  // namespace incmeter::hs

#endif  // INCMETER_HITTING_SET_HPP_
