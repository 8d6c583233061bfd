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


// Randomized invariants across modules. Each suite runs at least 500 cases.

#include "doctest.h"
#include "incmeter/approx.hpp"
#include "incmeter/exact.hpp"
#include "incmeter/measures.hpp"
#include "incmeter/updates.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace incmeter;
using namespace incmeter::testing;

namespace {

constexpr int kCases = 500;

Instance without(const Instance& inst, const TidSet& deleted) {
  std::vector<Tuple> kept;
  for (const Tuple& t : inst.tuples()) {
    if (!std::binary_search(deleted.begin(), deleted.end(), t.tid)) kept.push_back(t);
  }
  return Instance(inst.schema(), std::move(kept));
}

}  // namespace

TEST_CASE("exact solver against the subset oracle") {
  CaseGenerator gen(101);
  for (int i = 0; i < kCases; ++i) {
    RandomCase c = gen.next();
    auto hg = build_hypergraph(c.instance, c.constraints);
    RepairSolution exact = min_hitting_set(hg);
    CHECK(exact.deleted.size() == brute_force_min_hitting_set(hg).deleted.size());
    CHECK(exact.deleted.size() == oracle_min_deletions(c.instance, c.constraints));
    // Deleting the witness restores consistency.
    CHECK(naive_consistent(without(c.instance, exact.deleted), c.constraints));
    // The complement is a C-repair.
    RepairSet crep = enumerate_c_repairs(hg);
    REQUIRE_FALSE(crep.repairs.empty());
    CHECK(c.instance.size() - crep.repairs.front().size() == exact.deleted.size());
  }
}

TEST_CASE("S-repairs against the subset oracle") {
  CaseGenerator gen(102, RandomParams{.max_tuples = 10});
  for (int i = 0; i < kCases; ++i) {
    RandomCase c = gen.next();
    auto reps = enumerate_s_repairs(c.instance, c.constraints).repairs;
    CHECK(reps == oracle_s_repairs(c.instance, c.constraints));
    // count_srep stays strictly inside (0, 1).
    Rational v = measure_count_srep(c.instance, c.constraints).value;
    CHECK(Rational(0) < v);
    CHECK(v < Rational(1));
  }
}

TEST_CASE("approximations are valid and within the rank factor") {
  CaseGenerator gen(103);
  int within = 0;
  for (int i = 0; i < kCases; ++i) {
    RandomCase c = gen.next();
    auto hg = build_hypergraph(c.instance, c.constraints);
    const std::size_t opt = min_hitting_set(hg).deleted.size();
    const std::size_t d = std::max<std::size_t>(hg.rank(), 1);
    RepairSolution lr = local_ratio_hitting_set(hg);
    CHECK(naive_consistent(without(c.instance, lr.deleted), c.constraints));
    CHECK(opt <= lr.deleted.size());
    CHECK(lr.deleted.size() <= d * opt);
    RepairSolution rr = randomized_rounding_hitting_set(hg, Rational(1, 10), 1000 + i);
    CHECK(naive_consistent(without(c.instance, rr.deleted), c.constraints));
    CHECK(opt <= rr.deleted.size());
    if (rr.deleted.size() <= d * opt) ++within;
  }
  CHECK(within * 100 >= kCases * 95);
}

TEST_CASE("fractional covers are feasible and bracket the LP optimum") {
  CaseGenerator gen(104, RandomParams{.max_tuples = 7});
  for (int i = 0; i < kCases; ++i) {
    RandomCase c = gen.next();
    auto hg = build_hypergraph(c.instance, c.constraints);
    FractionalCover f = lp_fractional_cover(hg, Rational(1, 10));
    for (const auto& e : hg.edges()) {
      Rational s(0);
      for (Tid t : e) s += f.weights.at(t);
      CHECK(s >= Rational(1));
    }
    Rational opt = oracle_lp_optimum(hg);
    CHECK(f.lower_bound <= opt);
    CHECK(opt <= f.objective);
    CHECK(opt <= Rational(static_cast<std::int64_t>(min_hitting_set(hg).deleted.size())));
  }
}

TEST_CASE("update bounds and incremental maintenance") {
  CaseGenerator gen(105);
  int applicable = 0;
  for (int i = 0; i < kCases; ++i) {
    RandomCase c = gen.next(2 + gen.pick(10));
    UpdateDelta d;
    switch (gen.pick(3)) {
      case 0: d = gen.insertions(c.instance, 1 + gen.pick(3)); break;
      case 1: d = gen.deletions(c.instance, 1 + gen.pick(c.instance.size() - 1)); break;
      default:
        d = gen.insertions(c.instance, 1 + gen.pick(2));
        d.deletions = gen.deletions(c.instance, 1).deletions;
    }
    for (const auto& r : check_update_bounds(c.instance, c.constraints, d)) {
      if (!r.applicable) continue;
      ++applicable;
      for (const auto& b : r.bounds) {
        INFO(b.name);
        CHECK(b.holds);
      }
    }
    auto inc = incremental_hypergraph(build_hypergraph(c.instance, c.constraints), c.instance,
                                      d, c.constraints);
    CHECK(inc.edges() == build_hypergraph(apply_update(c.instance, d), c.constraints).edges());
  }
  CHECK(applicable >= kCases);
}

TEST_CASE("measures do not depend on tuple ids") {
  CaseGenerator gen(106);
  for (int i = 0; i < kCases; ++i) {
    RandomCase c = gen.next();
    std::vector<std::uint32_t> fresh(c.instance.size());
    for (std::size_t k = 0; k < fresh.size(); ++k) fresh[k] = static_cast<std::uint32_t>(10 + 3 * k);
    std::shuffle(fresh.begin(), fresh.end(), gen.rng());
    std::vector<Tuple> moved;
    for (std::size_t k = 0; k < c.instance.size(); ++k) {
      Tuple t = c.instance.tuples()[k];
      t.tid = Tid{fresh[k]};
      moved.push_back(t);
    }
    Instance relabeled(c.instance.schema(), std::move(moved));
    CHECK(inc_deg_g3(c.instance, c.constraints).value ==
          inc_deg_g3(relabeled, c.constraints).value);
    CHECK(build_hypergraph(c.instance, c.constraints).edges().size() ==
          build_hypergraph(relabeled, c.constraints).edges().size());
  }
}
