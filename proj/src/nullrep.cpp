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

#include "incmeter/nullrep.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "incmeter/errors.hpp"
#include "incmeter/join.hpp"

namespace incmeter {
namespace {

std::vector<CellChange> to_changes(const NullConflicts& nc, const hs::Set& s) {
  std::vector<CellChange> out;
  for (hs::Element e : s) out.push_back(nc.cells[e]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool eval_with_nulls(const Instance& instance,
                     const ConstraintSet& constraints) {
  return check_consistency(instance, constraints);
}

Instance apply_null_changes(const Instance& instance,
                            const std::vector<CellChange>& changes) {
  std::vector<Tuple> tuples = instance.tuples();
  std::map<Tid, std::size_t> row_of;
  for (std::size_t i = 0; i < tuples.size(); ++i) row_of[tuples[i].tid] = i;
  for (const CellChange& c : changes) {
    auto it = row_of.find(c.tid);
    if (it == row_of.end()) {
      throw InputError("unknown_tid",
                       "no tuple with tid " + std::to_string(c.tid.value));
    }
    Tuple& t = tuples[it->second];
    if (c.position == 0 || c.position > t.values.size()) {
      throw InputError("bad_position",
                       "position " + std::to_string(c.position) +
                           " out of range for tid " +
                           std::to_string(c.tid.value));
    }
    std::string& v = t.values[c.position - 1];
    if (v == kNullToken) {
      throw InputError("already_null",
                       "cell " + std::to_string(c.tid.value) + ";" +
                           std::to_string(c.position) + " is already null");
    }
    v = std::string(kNullToken);
  }
  return Instance(instance.schema(), std::move(tuples), instance.endogenous(),
                  Instance::Nulls::kAllowed);
}

NullConflicts null_conflicts(const Instance& instance,
                             const ConstraintSet& constraints) {
  std::vector<std::vector<CellChange>> raw;
  NullConflicts nc;
  for (const DenialConstraint& dc : constraints.constraints()) {
    BodyMatcher matcher(instance, dc);
    const auto& sensitive = matcher.sensitive_positions();
    matcher.for_each([&](BodyMatcher::Assignment rows) {
      std::vector<CellChange> cells;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const Tuple& t = instance.tuples()[rows[i]];
        for (std::size_t j = 0; j < sensitive[i].size(); ++j) {
          if (sensitive[i][j]) cells.push_back({t.tid, j + 1});
        }
      }
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
      if (cells.empty()) nc.irreparable = true;
      raw.push_back(std::move(cells));
      return true;
    });
  }
  std::set<CellChange> all;
  for (const auto& r : raw) all.insert(r.begin(), r.end());
  nc.cells.assign(all.begin(), all.end());
  nc.system.num_elements = nc.cells.size();
  std::set<hs::Set> dedup;
  for (const auto& r : raw) {
    hs::Set s;
    for (const CellChange& c : r) {
      s.push_back(static_cast<hs::Element>(
          std::lower_bound(nc.cells.begin(), nc.cells.end(), c) -
          nc.cells.begin()));
    }
    dedup.insert(std::move(s));
  }
  nc.system.sets.assign(dedup.begin(), dedup.end());
  return nc;
}

std::optional<NullRepairSolution> min_null_changes(
    const Instance& instance, const ConstraintSet& constraints,
    const NullRepairOptions& options) {
  NullConflicts nc = null_conflicts(instance, constraints);
  if (nc.irreparable) return std::nullopt;
  if (nc.cells.size() > options.max_cells) {
    throw ResourceLimitError("null repair search limited to " +
                             std::to_string(options.max_cells) +
                             " candidate cells, found " +
                             std::to_string(nc.cells.size()));
  }
  NullRepairSolution sol;
  sol.atv = instance.attribute_value_count();
  if (nc.system.sets.empty()) return sol;
  hs::Set best = hs::minimum_hitting_set(nc.system, options.node_budget,
                                         hs::take_whole_sets(nc.system));
  sol.changes = to_changes(nc, best);
  return sol;
}

std::vector<std::vector<CellChange>> enumerate_null_s_repairs(
    const Instance& instance, const ConstraintSet& constraints,
    const EnumerationOptions& options) {
  NullConflicts nc = null_conflicts(instance, constraints);
  if (nc.irreparable) return {};
  if (nc.cells.size() > options.max_tuples) {
    throw ResourceLimitError("null repair enumeration limited to " +
                             std::to_string(options.max_tuples) +
                             " candidate cells, found " +
                             std::to_string(nc.cells.size()));
  }
  std::vector<std::vector<CellChange>> out;
  for (const hs::Set& t : hs::minimal_transversals(nc.system)) {
    out.push_back(to_changes(nc, t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

MeasureReport inc_deg_g3_null(const Instance& instance,
                              const ConstraintSet& constraints,
                              const NullRepairOptions& options) {
  MeasureReport report;
  report.kind = MeasureKind::kG3Null;
  report.normalization = Normalization::kAttributeValues;
  if (instance.empty()) return report;
  auto sol = min_null_changes(instance, constraints, options);
  if (!sol) {
    report.irreparable = true;
    report.value = Rational(1);
    return report;
  }
  report.value = Rational(static_cast<std::int64_t>(sol->changes.size()),
                          static_cast<std::int64_t>(sol->atv));
  report.null_solution = std::move(*sol);
  return report;
}

}  // namespace incmeter
