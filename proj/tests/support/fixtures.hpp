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

// Worked instances shared by the unit tests and the acceptance driver.

#ifndef INCMETER_TESTS_FIXTURES_HPP_
#define INCMETER_TESTS_FIXTURES_HPP_

#include <string>
#include <vector>

#include "incmeter/conflicts.hpp"
#include "incmeter/model.hpp"

namespace incmeter::testing {

inline TidSet tids(std::initializer_list<std::uint32_t> v) {
  TidSet out;
  for (auto x : v) out.push_back(Tid{x});
  return out;
}

inline Tuple tup(std::uint32_t tid, std::string pred,
                 std::vector<std::string> values) {
  return Tuple{Tid{tid}, std::move(pred), std::move(values)};
}

// D = {P(a), P(e), Q(a,b), R(a,c)} with tids 1..4 and
//   k1: !exists P(x), Q(x,y)    k2: !exists P(x), R(x,y)
inline Schema example1_schema() {
  return parse_schema("P(A)\nQ(A, B)\nR(A, B)\n");
}

inline Instance example1_instance(std::vector<Tid> endogenous = {}) {
  return Instance(example1_schema(),
                  {tup(1, "P", {"a"}), tup(2, "P", {"e"}),
                   tup(3, "Q", {"a", "b"}), tup(4, "R", {"a", "c"})},
                  std::move(endogenous));
}

inline const char* kExample1Constraints =
    "dc k1: !exists P(x), Q(x, y)\n"
    "dc k2: !exists P(x), R(x, y)\n";

inline ConstraintSet example1_constraints() {
  return parse_constraints(kExample1Constraints, example1_schema());
}

// R = {(a,b,d), (a,e,c), (a,b,c)} with tids 1..3, FDs A -> B and C -> B.
inline Schema example4_schema() { return parse_schema("R(A, B, C)\n"); }

inline Instance example4_instance() {
  return Instance(example4_schema(),
                  {tup(1, "R", {"a", "b", "d"}), tup(2, "R", {"a", "e", "c"}),
                   tup(3, "R", {"a", "b", "c"})});
}

inline const char* kExample4Constraints =
    "fd f1: R: A -> B\n"
    "fd f2: R: C -> B\n";

inline ConstraintSet example4_constraints() {
  return parse_constraints(kExample4Constraints, example4_schema());
}

// D = {S(1;a2), S(2;a3), R(3;a3,a1), R(4;a3,a4), R(5;a3,a5)} and
//   k: !exists S(x), R(x,y)
inline Schema example6_schema() { return parse_schema("R(A, B)\nS(A)\n"); }

inline Instance example6_instance() {
  return Instance(example6_schema(),
                  {tup(1, "S", {"a2"}), tup(2, "S", {"a3"}),
                   tup(3, "R", {"a3", "a1"}), tup(4, "R", {"a3", "a4"}),
                   tup(5, "R", {"a3", "a5"})});
}

inline const char* kExample6Constraints = "dc k: !exists S(x), R(x, y)\n";

inline ConstraintSet example6_constraints() {
  return parse_constraints(kExample6Constraints, example6_schema());
}

}  // namespace incmeter::testing

#endif  // INCMETER_TESTS_FIXTURES_HPP_
