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


#include "doctest.h"
#include "fixtures.hpp"
#include "incmeter/approx.hpp"
#include "incmeter/exact.hpp"
#include "oracles.hpp"
#include "random_instances.hpp"

using namespace incmeter;
using namespace incmeter::testing;

namespace {

bool covers(const ConflictHypergraph& hg, const FractionalCover& fc) {
  for (const auto& e : hg.edges()) {
    Rational s(0);
    for (Tid t : e) s += fc.weights.at(t);
    if (s < Rational(1)) return false;
  }
  Rational total(0);
  for (const auto& [t, w] : fc.weights) {
    if (w < Rational(0) || w > Rational(1)) return false;
    total += w;
  }
  return total == fc.objective;
}

}  // namespace

TEST_CASE("local ratio traces") {
  auto h1 = build_hypergraph(example1_instance(), example1_constraints());
  RepairSolution a = local_ratio_hitting_set(h1);
  CHECK(a.deleted == tids({1, 3}));
  CHECK(a.method == Method::kLocalRatio);
  CHECK_FALSE(a.optimal);
  auto h4 = build_hypergraph(example4_instance(), example4_constraints());
  CHECK(local_ratio_hitting_set(h4).deleted == tids({1, 2}));
  CHECK(local_ratio_hitting_set(ConflictHypergraph::from_edges(tids({1}), {})).deleted.empty());
}

TEST_CASE("fractional cover of small hypergraphs") {
  const Rational eps(1, 10);
  // One edge: the symmetric optimum puts 1/2 on each end; the objective is
  // the sum of the weights.
  auto single = ConflictHypergraph::from_edges({}, {tids({1, 2})});
  FractionalCover s = lp_fractional_cover(single, eps);
  CHECK(covers(single, s));
  CHECK(s.weights.at(Tid{1}) == Rational(1, 2));
  CHECK(s.weights.at(Tid{2}) == Rational(1, 2));
  CHECK(s.objective == Rational(1));

  auto h1 = build_hypergraph(example1_instance(), example1_constraints());
  CHECK(oracle_lp_optimum(h1) == Rational(1));
  FractionalCover f = lp_fractional_cover(h1, eps);
  CHECK(covers(h1, f));
  CHECK(f.objective <= (Rational(1) + eps) * oracle_lp_optimum(h1));
  CHECK(f.lower_bound <= oracle_lp_optimum(h1));

  auto none = ConflictHypergraph::from_edges(tids({1, 2}), {});
  FractionalCover z = lp_fractional_cover(none, eps);
  CHECK(z.objective.is_zero());
  for (const auto& [t, w] : z.weights) CHECK(w.is_zero());
}

TEST_CASE("randomized rounding") {
  auto h1 = build_hypergraph(example1_instance(), example1_constraints());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RepairSolution r = randomized_rounding_hitting_set(h1, Rational(1, 10), seed);
    CHECK(h1.is_hitting_set(r.deleted));
    CHECK(r.deleted.size() <= 2);
    CHECK(r.method == Method::kRandomized);
    RepairSolution again = randomized_rounding_hitting_set(h1, Rational(1, 10), seed);
    CHECK(again.deleted == r.deleted);
  }
  auto none = ConflictHypergraph::from_edges(tids({1, 2}), {});
  CHECK(randomized_rounding_hitting_set(none, Rational(1, 10), 9).deleted.empty());

  RoundingTrace trace;
  RoundingOptions three;
  three.repetitions = 3;
  randomized_rounding_hitting_set(h1, Rational(1, 10), 4, three, &trace);
  CHECK(trace.final_size.size() == 3);
  CHECK(trace.drawn.size() == 3);
}

TEST_CASE("LP feasibility and optimality gap on random hypergraphs") {
  CaseGenerator gen(51);
  const Rational eps(1, 10);
  for (int i = 0; i < 150; ++i) {
    auto hg = gen.hypergraph(2 + gen.pick(6), 1 + gen.pick(7), 3);
    FractionalCover f = lp_fractional_cover(hg, eps);
    Rational opt = oracle_lp_optimum(hg);
    CHECK(covers(hg, f));
    CHECK(f.lower_bound <= opt);
    CHECK(opt <= f.objective);
    CHECK(f.objective <= (Rational(1) + eps) * opt);
  }
}

TEST_CASE("approximation sandwich on random hypergraphs") {
  CaseGenerator gen(52);
  int within = 0, runs = 0;
  for (int i = 0; i < 300; ++i) {
    auto hg = gen.hypergraph(2 + gen.pick(15), 1 + gen.pick(20), 3);
    const std::size_t opt = brute_force_min_hitting_set(hg).deleted.size();
    const std::size_t d = hg.rank();
    RepairSolution lr = local_ratio_hitting_set(hg);
    CHECK(hg.is_hitting_set(lr.deleted));
    CHECK(opt <= lr.deleted.size());
    CHECK(lr.deleted.size() <= d * opt);
    RepairSolution rr = randomized_rounding_hitting_set(hg, Rational(1, 10), i);
    CHECK(hg.is_hitting_set(rr.deleted));
    CHECK(opt <= rr.deleted.size());
    ++runs;
    if (rr.deleted.size() <= d * opt) ++within;
  }
  CHECK(within * 100 >= runs * 95);
}
