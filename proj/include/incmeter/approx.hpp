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

// Polynomial-time approximations of the minimum hitting set of a conflict
// hypergraph whose edges have at most d tuples.

#ifndef INCMETER_APPROX_HPP_
#define INCMETER_APPROX_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "incmeter/conflicts.hpp"
#include "incmeter/rational.hpp"
#include "incmeter/repair.hpp"

namespace incmeter {

// Scans edges in canonical order and takes every tuple of each edge that is
// still unhit. The chosen edges are pairwise disjoint, so any hitting set
// needs one tuple per chosen edge: the result is within a factor d of the
// optimum.
RepairSolution local_ratio_hitting_set(const ConflictHypergraph& hg);

// Feasible solution of the covering LP
//   min sum_t w(t)  s.t.  sum_{t in e} w(t) >= 1 for every edge e, w >= 0.
struct FractionalCover {
  std::map<Tid, Rational> weights;  // every vertex, in [0, 1]
  Rational objective;               // sum of weights
  // Value of a feasible fractional packing of edges; a lower bound on the
  // LP optimum by weak duality.
  Rational lower_bound;
  // objective <= (1 + eps) * lower_bound was verified exactly.
  bool certified = false;
  std::size_t iterations = 0;
};

struct LpOptions {
  std::size_t max_iterations = 2'000'000;
};

// Multiplicative-weights solver on the dual packing LP: repeatedly route one
// unit through the edge of least total length and grow the lengths of its
// tuples by (1 + eps'). Normalized lengths give primal covers; scaled edge
// counts give dual packings. Stops once the best primal is within (1 + eps)
// of the best dual. Weights are snapped to a 2^-20 grid and then rescaled so
// that feasibility holds exactly.
FractionalCover lp_fractional_cover(const ConflictHypergraph& hg,
                                    const Rational& eps,
                                    const LpOptions& options = {});

struct RoundingOptions {
  std::size_t repetitions = 5;
  LpOptions lp;
};

struct RoundingTrace {
  // Per repetition: tuples drawn before patching and the final cover size.
  std::vector<std::size_t> drawn;
  std::vector<std::size_t> final_size;
  FractionalCover lp;
};

// Includes each tuple independently with probability min(1, d * w(t)),
// then patches every still-unhit edge by taking all its tuples. Best of
// `repetitions` runs (smallest, ties to the lexicographically smaller set);
// run i uses a PRNG seeded from `seed` by a splitmix64 step.
RepairSolution randomized_rounding_hitting_set(
    const ConflictHypergraph& hg, const Rational& eps, std::uint64_t seed,
    const RoundingOptions& options = {}, RoundingTrace* trace = nullptr);

}  // namespace incmeter

#endif  // INCMETER_APPROX_HPP_
