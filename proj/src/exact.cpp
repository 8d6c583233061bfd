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

#include "incmeter/exact.hpp"

#include <algorithm>
#include <string>

#include "incmeter/errors.hpp"

namespace incmeter {
namespace {

RepairSolution make_solution(const ConflictHypergraph& hg,
                             const IndexedHypergraph& ix, const hs::Set& picked,
                             Method method, bool optimal) {
  RepairSolution sol;
  for (hs::Element e : picked) sol.deleted.push_back(ix.elements[e]);
  std::sort(sol.deleted.begin(), sol.deleted.end());
  sol.repair_size = hg.vertices().size() - sol.deleted.size();
  sol.method = method;
  sol.optimal = optimal;
  return sol;
}

void check_enumeration_limit(const ConflictHypergraph& hg,
                             const EnumerationOptions& options) {
  if (hg.vertices().size() > options.max_tuples) {
    throw ResourceLimitError("repair enumeration limited to " +
                             std::to_string(options.max_tuples) +
                             " tuples, instance has " +
                             std::to_string(hg.vertices().size()));
  }
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kExact: return "exact";
    case Method::kBrute: return "brute";
    case Method::kLocalRatio: return "local_ratio";
    case Method::kRandomized: return "randomized";
  }
  return "?";
}

IndexedHypergraph index_hypergraph(const ConflictHypergraph& hg) {
  IndexedHypergraph ix;
  for (const auto& e : hg.edges()) {
    ix.elements.insert(ix.elements.end(), e.begin(), e.end());
  }
  std::sort(ix.elements.begin(), ix.elements.end());
  ix.elements.erase(std::unique(ix.elements.begin(), ix.elements.end()),
                    ix.elements.end());
  ix.system.num_elements = ix.elements.size();
  for (const auto& e : hg.edges()) {
    hs::Set s;
    for (Tid t : e) {
      s.push_back(static_cast<hs::Element>(
          std::lower_bound(ix.elements.begin(), ix.elements.end(), t) -
          ix.elements.begin()));
    }
    ix.system.sets.push_back(std::move(s));
  }
  return ix;
}

RepairSolution min_hitting_set(const ConflictHypergraph& hg,
                               const ExactOptions& options) {
  IndexedHypergraph ix = index_hypergraph(hg);
  hs::Set upper = hs::take_whole_sets(ix.system);
  hs::Set best = hs::minimum_hitting_set(ix.system, options.node_budget,
                                         std::move(upper));
  return make_solution(hg, ix, best, Method::kExact, true);
}

RepairSolution brute_force_min_hitting_set(const ConflictHypergraph& hg) {
  IndexedHypergraph ix = index_hypergraph(hg);
  return make_solution(hg, ix, hs::brute_force_minimum(ix.system),
                       Method::kBrute, true);
}

RepairSet enumerate_s_repairs(const ConflictHypergraph& hg,
                              const EnumerationOptions& options) {
  check_enumeration_limit(hg, options);
  IndexedHypergraph ix = index_hypergraph(hg);
  RepairSet out;
  out.kind = RepairKind::kSubset;
  for (const hs::Set& t : hs::minimal_transversals(ix.system)) {
    TidSet deleted;
    for (hs::Element e : t) deleted.push_back(ix.elements[e]);
    TidSet kept;
    std::set_difference(hg.vertices().begin(), hg.vertices().end(),
                        deleted.begin(), deleted.end(), std::back_inserter(kept));
    out.repairs.push_back(std::move(kept));
  }
  std::sort(out.repairs.begin(), out.repairs.end());
  return out;
}

RepairSet enumerate_s_repairs(const Instance& instance,
                              const ConstraintSet& constraints,
                              const EnumerationOptions& options) {
  if (instance.size() > options.max_tuples) {
    throw ResourceLimitError("repair enumeration limited to " +
                             std::to_string(options.max_tuples) + " tuples");
  }
  return enumerate_s_repairs(build_hypergraph(instance, constraints), options);
}

RepairSet enumerate_c_repairs(const ConflictHypergraph& hg,
                              const EnumerationOptions& options) {
  RepairSet s = enumerate_s_repairs(hg, options);
  std::size_t best = 0;
  for (const auto& r : s.repairs) best = std::max(best, r.size());
  RepairSet out;
  out.kind = RepairKind::kCardinality;
  for (auto& r : s.repairs) {
    if (r.size() == best) out.repairs.push_back(std::move(r));
  }
  return out;
}

RepairSet enumerate_c_repairs(const Instance& instance,
                              const ConstraintSet& constraints,
                              const EnumerationOptions& options) {
  if (instance.size() > options.max_tuples) {
    throw ResourceLimitError("repair enumeration limited to " +
                             std::to_string(options.max_tuples) + " tuples");
  }
  return enumerate_c_repairs(build_hypergraph(instance, constraints), options);
}

std::optional<RepairSolution> min_endogenous_hitting_set(
    const ConflictHypergraph& hg, TidSet endogenous,
    const ExactOptions& options) {
  std::sort(endogenous.begin(), endogenous.end());
  std::vector<TidSet> restricted;
  for (const auto& e : hg.edges()) {
    TidSet r;
    std::set_intersection(e.begin(), e.end(), endogenous.begin(),
                          endogenous.end(), std::back_inserter(r));
    if (r.empty()) return std::nullopt;
    restricted.push_back(std::move(r));
  }
  ConflictHypergraph sub =
      ConflictHypergraph::from_edges(hg.vertices(), std::move(restricted));
  return min_hitting_set(sub, options);
}

}  // namespace incmeter
