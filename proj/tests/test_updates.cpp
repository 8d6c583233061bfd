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


#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "incmeter/errors.hpp"
#include "incmeter/measures.hpp"
#include "incmeter/updates.hpp"
#include "random_instances.hpp"

using namespace incmeter;
using namespace incmeter::testing;

namespace {

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.code();
  }
  return "";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

UpdateDelta insert(std::string pred, std::vector<std::string> values) {
  UpdateDelta d;
  d.insertions.push_back(Insertion{std::move(pred), std::move(values)});
  return d;
}

UpdateDelta remove(std::initializer_list<std::uint32_t> ts) {
  UpdateDelta d;
  for (auto t : ts) d.deletions.push_back(Tid{t});
  return d;
}

const BoundCheck* find_bound(const BoundCheckReport& r, const std::string& name) {
  const BoundCheck* out = nullptr;
  for (const auto& b : r.bounds) {
    if (b.name == name) out = &b;  // last match: the strengthened form
  }
  return out;
}

}  // namespace

TEST_CASE("delta parsing") {
  Schema s = example1_schema();
  UpdateDelta d = parse_delta("# change\n+ Q(e, w)\n- 2\n+ R(\"x y\", z)  # note\n\n", s);
  REQUIRE(d.insertions.size() == 2);
  CHECK(d.insertions[0].predicate == "Q");
  CHECK(d.insertions[0].values == std::vector<std::string>{"e", "w"});
  CHECK(d.insertions[1].values == std::vector<std::string>{"x y", "z"});
  CHECK(d.deletions == std::vector<Tid>{Tid{2}});
  CHECK_FALSE(d.empty());
  CHECK(parse_delta("", s).empty());

  CHECK_THROWS_AS(parse_delta("* 2\n", s), ParseError);
  CHECK_THROWS_AS(parse_delta("- x\n", s), ParseError);
  CHECK_THROWS_AS(parse_delta("+ T(a)\n", s), ParseError);
  CHECK_THROWS_AS(parse_delta("+ Q(a)\n", s), ParseError);
  CHECK_THROWS_AS(parse_delta("+ P(NULL)\n", s), ParseError);
  try {
    parse_delta("+ P(a)\n+ P(\"a)\n", s);
    FAIL("expected a syntax error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  UpdateDelta file = parse_delta(
      slurp(std::string(INCMETER_TEST_DATA) + "/example1_insert.delta"), s);
  REQUIRE(file.insertions.size() == 1);
  CHECK(file.insertions[0].values == std::vector<std::string>{"e", "w"});
}

TEST_CASE("applying updates") {
  Instance d = example1_instance();
  TidSet inserted;
  Instance up = apply_update(d, insert("P", {"f"}), &inserted);
  CHECK(up.size() == 5);
  CHECK(inserted == tids({5}));
  CHECK(up.find(Tid{5})->values == std::vector<std::string>{"f"});

  Instance down = apply_update(d, remove({1}));
  CHECK(down.size() == 3);
  CHECK(check_consistency(down, example1_constraints()));

  CHECK(error_code([&] { apply_update(d, remove({9})); }) == "unknown_tid");
  CHECK(error_code([&] { apply_update(d, remove({2, 2})); }) == "duplicate_deletion");
  CHECK(error_code([&] { apply_update(d, insert("P", {"a"})); }) == "duplicate_tuple");

  // Deletions run first, so a deleted tuple may be re-inserted with a new tid.
  UpdateDelta both = insert("P", {"a"});
  both.deletions.push_back(Tid{1});
  Instance swapped = apply_update(d, both, &inserted);
  CHECK(inserted == tids({5}));
  CHECK(swapped.find_tid("P", {"a"}) == Tid{5});

  // New tuples join the exogenous side of a partition.
  Instance part = apply_update(example1_instance({Tid{2}, Tid{3}}), insert("P", {"f"}));
  CHECK(part.effective_endogenous() == tids({2, 3}));
  Instance part2 = apply_update(example1_instance({Tid{2}, Tid{3}}), remove({3}));
  CHECK(part2.effective_endogenous() == tids({2}));
}

TEST_CASE("incremental hypergraph on the worked instance") {
  Instance d = example1_instance();
  ConstraintSet cs = example1_constraints();
  ConflictHypergraph hg = build_hypergraph(d, cs);

  CHECK_FALSE(incremental_hypergraph(hg, d, remove({1}), cs).has_edges());
  CHECK(incremental_hypergraph(hg, d, insert("P", {"f"}), cs).edges() == hg.edges());
  ConflictHypergraph grown = incremental_hypergraph(hg, d, insert("Q", {"e", "z"}), cs);
  CHECK(grown.edges() == std::vector<TidSet>{tids({1, 3}), tids({1, 4}), tids({2, 5})});
  CHECK(grown.vertices() == tids({1, 2, 3, 4, 5}));
}

TEST_CASE("insertion bounds on the worked instance") {
  BoundCheckReport r = check_insertion_bounds(example1_instance(), example1_constraints(),
                                              insert("Q", {"e", "w"}));
  CHECK(r.direction == UpdateDirection::kInsert);
  CHECK(r.applicable);
  CHECK(r.epsilon == Rational(1, 4));
  CHECK(r.before == Rational(1, 4));
  CHECK(r.after == Rational(2, 5));
  REQUIRE(r.bounds.size() == 2);
  CHECK(r.bounds[0].lhs == Rational(2, 5));
  CHECK(r.bounds[0].rhs == Rational(9, 20));
  CHECK(r.bounds[1].lhs == Rational(1, 4));
  CHECK(r.bounds[1].rhs == Rational(8, 15));
  CHECK(r.all_hold());
  CHECK(error_code([] {
          check_insertion_bounds(example1_instance(), example1_constraints(), remove({2}));
        }) == "mixed_delta");
}

TEST_CASE("deletion bounds on the worked instance") {
  BoundCheckReport r = check_deletion_bounds(example1_instance(), example1_constraints(),
                                             remove({2}));
  CHECK(r.direction == UpdateDirection::kDelete);
  CHECK(r.epsilon == Rational(1, 4));
  CHECK(r.before == Rational(1, 4));
  CHECK(r.after == Rational(1, 3));
  CHECK_FALSE(r.deleted_participate);
  const BoundCheck* a = find_bound(r, "after <= before / (1 - eps)");
  REQUIRE(a);
  CHECK(a->lhs == Rational(1, 3));
  CHECK(a->rhs == Rational(1, 3));
  const BoundCheck* b = find_bound(r, "before <= after / (1 - eps)");
  REQUIRE(b);
  CHECK(b->rhs == Rational(4, 9));
  CHECK(r.all_hold());

  BoundCheckReport p = check_deletion_bounds(example1_instance(), example1_constraints(),
                                             remove({1}));
  CHECK(p.deleted_participate);
  CHECK(p.after.is_zero());
  CHECK(p.bounds.size() == 2);
  CHECK(p.all_hold());

  // All tuples deleted: eps = 1, nothing to evaluate.
  BoundCheckReport all = check_deletion_bounds(example1_instance(), example1_constraints(),
                                               remove({1, 2, 3, 4}));
  CHECK_FALSE(all.applicable);
  CHECK(all.bounds.empty());
}

TEST_CASE("mixed deltas are checked as a deletion then an insertion") {
  UpdateDelta mixed = insert("Q", {"e", "w"});
  mixed.deletions.push_back(Tid{2});
  auto reports = check_update_bounds(example1_instance(), example1_constraints(), mixed);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].direction == UpdateDirection::kDelete);
  CHECK(reports[1].direction == UpdateDirection::kInsert);
  CHECK(reports[1].before == reports[0].after);
}

TEST_CASE("incremental hypergraph equals a rebuild on random deltas") {
  CaseGenerator gen(71);
  for (int i = 0; i < 300; ++i) {
    RandomCase c = gen.next();
    UpdateDelta d = gen.insertions(c.instance, gen.pick(4));
    UpdateDelta del = gen.deletions(c.instance, gen.pick(3));
    d.deletions = del.deletions;
    ConflictHypergraph inc = incremental_hypergraph(build_hypergraph(c.instance, c.constraints),
                                                    c.instance, d, c.constraints);
    ConflictHypergraph full = build_hypergraph(apply_update(c.instance, d), c.constraints);
    CHECK(inc.edges() == full.edges());
    CHECK(inc.labeled_edges() == full.labeled_edges());
    CHECK(inc.vertices() == full.vertices());
  }
}

TEST_CASE("update bounds hold on random deltas") {
  CaseGenerator gen(72);
  int evaluated = 0;
  for (int i = 0; i < 300; ++i) {
    RandomCase c = gen.next();
    if (c.instance.size() < 2) continue;
    UpdateDelta d = gen.coin(0.5) ? gen.insertions(c.instance, 1 + gen.pick(3))
                                  : gen.deletions(c.instance, 1 + gen.pick(c.instance.size() - 1));
    if (d.empty()) continue;
    for (const auto& r : check_update_bounds(c.instance, c.constraints, d)) {
      if (!r.applicable) continue;
      ++evaluated;
      for (const auto& b : r.bounds) {
        INFO(b.name, " ", b.lhs.to_string(), " vs ", b.rhs.to_string());
        CHECK(b.holds);
        CHECK(b.holds == (b.lhs <= b.rhs));
      }
    }
  }
  CHECK(evaluated > 200);
}
