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

#include "incmeter/measures.hpp"

#include <algorithm>
#include <string>

#include "incmeter/errors.hpp"

namespace incmeter {
namespace {

Rational ratio(std::size_t num, std::size_t den) {
  if (den == 0) return Rational(0);
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

void check_subset_scan_limit(const Instance& instance,
                             const EnumerationOptions& options) {
  if (instance.size() > options.max_tuples || instance.size() > 62) {
    throw ResourceLimitError("subset-based measures limited to " +
                             std::to_string(std::min<std::size_t>(options.max_tuples, 62)) +
                             " tuples, instance has " +
                             std::to_string(instance.size()));
  }
}

}  // namespace

std::string_view to_string(MeasureKind k) {
  switch (k) {
    case MeasureKind::kG3Cardinality: return "g3_c";
    case MeasureKind::kG3Subset: return "g3_s";
    case MeasureKind::kG3Endogenous: return "g3_c_endogenous";
    case MeasureKind::kCountSubsetRepairs: return "count_srep";
    case MeasureKind::kCountConsistentSubsets: return "count_all_subsets";
    case MeasureKind::kJaccard: return "jaccard";
    case MeasureKind::kG3Null: return "g3_null";
  }
  return "?";
}

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::kDbSize: return "db_size";
    case Normalization::kEndogenousSize: return "endogenous_size";
    case Normalization::kAttributeValues: return "atv";
  }
  return "?";
}

MeasureReport inc_deg_g3(const Instance& instance, const ConflictHypergraph& hg,
                         const SolverConfig& config) {
  MeasureReport report;
  report.kind = MeasureKind::kG3Cardinality;
  RepairSolution sol;
  switch (config.solver) {
    case SolverChoice::kExact:
      sol = min_hitting_set(hg, config.exact);
      break;
    case SolverChoice::kLocalRatio:
      sol = local_ratio_hitting_set(hg);
      break;
    case SolverChoice::kRandomized:
      sol = randomized_rounding_hitting_set(hg, config.eps, config.seed,
                                            config.rounding);
      break;
  }
  report.exact = config.solver == SolverChoice::kExact;
  report.value = ratio(sol.deleted.size(), instance.size());
  report.solution = std::move(sol);
  return report;
}

MeasureReport inc_deg_g3(const Instance& instance,
                         const ConstraintSet& constraints,
                         const SolverConfig& config) {
  return inc_deg_g3(instance, build_hypergraph(instance, constraints), config);
}

MeasureReport inc_deg_g3_endogenous(const Instance& instance,
                                    const ConflictHypergraph& hg,
                                    Normalization normalization,
                                    const ExactOptions& options) {
  MeasureReport report;
  report.kind = MeasureKind::kG3Endogenous;
  report.normalization = normalization;
  TidSet endo = instance.effective_endogenous();
  auto sol = min_endogenous_hitting_set(hg, endo, options);
  if (!sol) {
    report.irreparable = true;
    report.value = Rational(1);
    return report;
  }
  std::size_t den = normalization == Normalization::kEndogenousSize
                        ? endo.size()
                        : instance.size();
  report.value = ratio(sol->deleted.size(), den);
  report.solution = std::move(*sol);
  return report;
}

MeasureReport inc_deg_g3_endogenous(const Instance& instance,
                                    const ConstraintSet& constraints,
                                    Normalization normalization,
                                    const ExactOptions& options) {
  return inc_deg_g3_endogenous(instance, build_hypergraph(instance, constraints),
                               normalization, options);
}

MeasureReport measure_count_srep(const Instance& instance,
                                 const ConstraintSet& constraints,
                                 const EnumerationOptions& options) {
  check_subset_scan_limit(instance, options);
  MeasureReport report;
  report.kind = MeasureKind::kCountSubsetRepairs;
  if (instance.empty()) return report;
  RepairSet reps = enumerate_s_repairs(instance, constraints, options);
  report.value = Rational(static_cast<std::int64_t>(reps.repairs.size()),
                          std::int64_t{1} << instance.size());
  report.repairs = std::move(reps);
  return report;
}

MeasureReport measure_count_all(const Instance& instance,
                                const ConstraintSet& constraints,
                                const EnumerationOptions& options) {
  check_subset_scan_limit(instance, options);
  MeasureReport report;
  report.kind = MeasureKind::kCountConsistentSubsets;
  if (instance.empty()) return report;
  // A subset is inconsistent iff it contains a minimal violation set.
  ConflictHypergraph hg = build_hypergraph(instance, constraints);
  TidSet tids = instance.tids();
  std::vector<std::uint64_t> edge_masks;
  for (const auto& e : hg.edges()) {
    std::uint64_t m = 0;
    for (Tid t : e) {
      m |= std::uint64_t{1}
           << (std::lower_bound(tids.begin(), tids.end(), t) - tids.begin());
    }
    edge_masks.push_back(m);
  }
  const std::uint64_t total = std::uint64_t{1} << instance.size();
  std::uint64_t consistent = 0;
  for (std::uint64_t subset = 0; subset < total; ++subset) {
    bool ok = std::none_of(edge_masks.begin(), edge_masks.end(),
                           [&](std::uint64_t m) { return (subset & m) == m; });
    consistent += ok;
  }
  report.value = Rational(1) - Rational(static_cast<std::int64_t>(consistent),
                                        static_cast<std::int64_t>(total));
  return report;
}

MeasureReport measure_jaccard(const Instance& instance,
                              const ConstraintSet& constraints,
                              const EnumerationOptions& options) {
  check_subset_scan_limit(instance, options);
  MeasureReport report;
  report.kind = MeasureKind::kJaccard;
  if (instance.empty()) return report;
  RepairSet reps = enumerate_s_repairs(instance, constraints, options);
  TidSet common = reps.repairs.front();
  for (const auto& r : reps.repairs) {
    TidSet next;
    std::set_intersection(common.begin(), common.end(), r.begin(), r.end(),
                          std::back_inserter(next));
    common = std::move(next);
  }
  report.value = Rational(1) - ratio(common.size(), instance.size());
  report.repairs = std::move(reps);
  return report;
}

}  // namespace incmeter
