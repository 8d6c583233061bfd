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

// Repair-based inconsistency degrees. Every value is an exact fraction in
// [0, 1]; the empty instance measures 0 under every kind.

#ifndef INCMETER_MEASURES_HPP_
#define INCMETER_MEASURES_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include "incmeter/approx.hpp"
#include "incmeter/conflicts.hpp"
#include "incmeter/exact.hpp"
#include "incmeter/model.hpp"
#include "incmeter/rational.hpp"
#include "incmeter/repair.hpp"

namespace incmeter {

enum class MeasureKind {
  kG3Cardinality,
  kG3Subset,
  kG3Endogenous,
  kCountSubsetRepairs,
  kCountConsistentSubsets,
  kJaccard,
  kG3Null,
};

enum class Normalization { kDbSize, kEndogenousSize, kAttributeValues };

enum class SolverChoice { kExact, kLocalRatio, kRandomized };

std::string_view to_string(MeasureKind k);
std::string_view to_string(Normalization n);

struct MeasureReport {
  MeasureKind kind = MeasureKind::kG3Cardinality;
  Rational value;
  Normalization normalization = Normalization::kDbSize;
  bool exact = true;
  // No repair exists under the chosen semantics (value is then 1).
  bool irreparable = false;
  // At most one witness is set, certifying the numerator.
  std::optional<RepairSolution> solution;
  std::optional<RepairSet> repairs;
  std::optional<NullRepairSolution> null_solution;
};

struct SolverConfig {
  SolverChoice solver = SolverChoice::kExact;
  ExactOptions exact;
  Rational eps = Rational(1, 10);
  std::uint64_t seed = 0;
  RoundingOptions rounding;
};

// |hitting set| / |D|. With the exact solver this is the cardinality-repair
// degree, which for denial constraints equals the subset-repair degree;
// approximate solvers give an upper bound flagged exact = false.
MeasureReport inc_deg_g3(const Instance& instance,
                         const ConflictHypergraph& hg,
                         const SolverConfig& config = {});
MeasureReport inc_deg_g3(const Instance& instance,
                         const ConstraintSet& constraints,
                         const SolverConfig& config = {});

// Deletions restricted to endogenous tuples. Irreparable instances measure 1.
MeasureReport inc_deg_g3_endogenous(
    const Instance& instance, const ConflictHypergraph& hg,
    Normalization normalization = Normalization::kDbSize,
    const ExactOptions& options = {});
MeasureReport inc_deg_g3_endogenous(
    const Instance& instance, const ConstraintSet& constraints,
    Normalization normalization = Normalization::kDbSize,
    const ExactOptions& options = {});

// |Srep(D)| / 2^|D|.
MeasureReport measure_count_srep(const Instance& instance,
                                 const ConstraintSet& constraints,
                                 const EnumerationOptions& options = {});

// 1 - |{D' subset of D : D' consistent}| / 2^|D|.
MeasureReport measure_count_all(const Instance& instance,
                                const ConstraintSet& constraints,
                                const EnumerationOptions& options = {});

// 1 - |intersection of Srep(D)| / |D|.
MeasureReport measure_jaccard(const Instance& instance,
                              const ConstraintSet& constraints,
                              const EnumerationOptions& options = {});

}  // namespace incmeter

#endif  // INCMETER_MEASURES_HPP_
