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

#ifndef INCMETER_CONFLICTS_HPP_
#define INCMETER_CONFLICTS_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "incmeter/model.hpp"

namespace incmeter {

// A subset-minimal set of tuples that jointly satisfies one constraint body.
struct Hyperedge {
  TidSet tids;
  std::string constraint;

  friend bool operator==(const Hyperedge&, const Hyperedge&) = default;
};

// Conflict hypergraph of an instance: one vertex per tuple, one hyperedge
// per minimal violation set.
//
// Two edge views are kept. labeled_edges() has one entry per (tid set,
// constraint), ordered by constraint position then tids, for diagnostics.
// edges() is the solving set: the union over constraints, deduplicated,
// with supersets of other edges removed, in lexicographic tid order.
class ConflictHypergraph {
 public:
  ConflictHypergraph() = default;
  // `labeled` need not be minimal or sorted; it is canonicalized here.
  // Constraint names order labeled edges by first appearance in
  // `constraint_order` (unknown names sort last, by name).
  ConflictHypergraph(TidSet vertices, std::vector<Hyperedge> labeled,
                     const std::vector<std::string>& constraint_order = {});

  // Builds a hypergraph from unlabeled edges, e.g. synthetic benchmarks.
  static ConflictHypergraph from_edges(TidSet vertices,
                                       std::vector<TidSet> edges);

  const TidSet& vertices() const { return vertices_; }
  const std::vector<Hyperedge>& labeled_edges() const { return labeled_; }
  const std::vector<TidSet>& edges() const { return edges_; }
  bool has_edges() const { return !edges_.empty(); }
  // Largest edge size in the solving set (0 if there are no edges).
  std::size_t rank() const { return rank_; }

  // True if `deleted` intersects every solving edge.
  bool is_hitting_set(const TidSet& deleted) const;

 private:
  TidSet vertices_;
  std::vector<Hyperedge> labeled_;
  std::vector<TidSet> edges_;
  std::size_t rank_ = 0;
};

// Removes duplicates and every set that strictly contains another one.
// Output is sorted lexicographically. Inputs must be sorted tid sets.
std::vector<TidSet> minimize_sets(std::vector<TidSet> sets);

// Enumerates every satisfying assignment of every constraint body and keeps
// the subset-minimal images. Atoms of a self-join may map to the same tuple,
// giving edges smaller than the atom count.
ConflictHypergraph build_hypergraph(const Instance& instance,
                                    const ConstraintSet& constraints);

// Candidate images for one constraint, restricted by a row filter; exposed
// for incremental maintenance. Not minimized.
std::vector<TidSet> violation_images(
    const Instance& instance, const DenialConstraint& dc,
    const std::function<bool(std::size_t atom, std::size_t row)>& filter = {});

struct DegreeTable {
  std::map<Tid, std::size_t> degree;  // every vertex, zero if isolated
  std::size_t max_degree = 0;
  std::optional<Tid> argmax;  // smallest tid attaining max_degree, if > 0
};

DegreeTable vertex_degrees(const ConflictHypergraph& hg);

// One line per labeled edge: `<constraint>: tid,tid,...`.
void dump_edges(std::ostream& os, const ConflictHypergraph& hg);

}  // namespace incmeter

#endif  // INCMETER_CONFLICTS_HPP_
