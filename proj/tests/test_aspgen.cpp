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


#include <sys/stat.h>
#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "incmeter/aspgen.hpp"
#include "incmeter/errors.hpp"

using namespace incmeter;
using namespace incmeter::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string data(const std::string& rel) {
  return std::string(INCMETER_TEST_DATA) + "/" + rel;
}

std::string error_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.code();
  }
  return "";
}

// A stand-in solver that prints a canned transcript.
std::string fake_solver(const std::string& transcript) {
  std::string path = "/tmp/incmeter_fake_solver_" + std::to_string(::getpid());
  std::ofstream(path) << "#!/bin/sh\ncat '" << transcript << "'\n";
  ::chmod(path.c_str(), 0755);
  return path;
}

}  // namespace

TEST_CASE("program for the running example matches the published listing") {
  AspProgram p = emit_repair_program(example1_instance(), example1_constraints());
  CHECK(p.facts == std::vector<std::string>{"p(1,a).", "p(2,e).", "q(3,a,b).", "r(4,a,c)."});
  CHECK(p.weak_constraints == std::vector<std::string>{":~ del(T)."});
  CHECK(p.queries.empty());
  auto got = normalized_asp_tokens(p.to_text());
  auto want = normalized_asp_tokens(slurp(data("running_example.dlv")));
  CHECK(got == want);
}

TEST_CASE("token normalization") {
  CHECK(normalized_asp_tokens("p_a(T,X,d) :- p(T,X).") ==
        normalized_asp_tokens("p_a(T1, Y, d)   :-  p(T1,Y) ."));
  CHECK(normalized_asp_tokens("p(X) :- q(X).") != normalized_asp_tokens("p(X) :- q(Y)."));
  // Renaming restarts per statement.
  CHECK(normalized_asp_tokens("a(X).\nb(Y).") == normalized_asp_tokens("a(Z).\nb(Z)."));
}

TEST_CASE("statement switches") {
  AspProgram bare = emit_repair_program(example1_instance(), example1_constraints(),
                                        AspStyle::kNormal, false, false);
  CHECK(bare.weak_constraints.empty());
  CHECK(bare.queries.empty());
  for (const auto& r : bare.rules) CHECK(r.find("#maxint") == std::string::npos);

  AspProgram query = emit_repair_program(example1_instance(), example1_constraints(),
                                         AspStyle::kNormal, true, false);
  CHECK(query.queries == std::vector<std::string>{"dist(X)?"});
  CHECK(query.to_text().find("dist(X)?") != std::string::npos);
  CHECK(query.to_text(false).find("dist(X)?") == std::string::npos);
}

TEST_CASE("disjunctive rules for functional dependencies") {
  AspProgram p = emit_repair_program(example4_instance(), example4_constraints(),
                                     AspStyle::kDisjunctive);
  REQUIRE(p.rules.size() >= 2);
  CHECK(normalized_asp_tokens(p.rules[0]) ==
        normalized_asp_tokens("r_a(T1,X,Y1,Z1,d) v r_a(T2,X,Y2,Z2,d) :- "
                              "r(T1,X,Y1,Z1), r(T2,X,Y2,Z2), Y1 != Y2."));
}

TEST_CASE("empty instance and quoting") {
  AspProgram e = emit_repair_program(Instance(example1_schema(), {}), example1_constraints());
  CHECK(e.facts.empty());
  CHECK_FALSE(e.rules.empty());

  Schema s = parse_schema("Emp(Name, Dept)\n");
  ConstraintSet cs = parse_constraints("dc c: !exists Emp(n, \"R&D\")\n", s);
  Instance inst(s, {tup(1, "Emp", {"Bob", "R&D"}), tup(2, "Emp", {"ann", "7"})});
  AspProgram p = emit_repair_program(inst, cs);
  CHECK(p.facts == std::vector<std::string>{"emp(1,\"Bob\",\"R&D\").", "emp(2,ann,7)."});
  CHECK(p.rules[0].find("\"R&D\"") != std::string::npos);
}

TEST_CASE("name collisions are rejected") {
  Schema s = parse_schema("P(A)\np(A)\n");
  ConstraintSet cs = parse_constraints("dc c: !exists P(x), p(x)\n", s);
  CHECK(error_code([&] { emit_repair_program(Instance(s, {}), cs); }) ==
        "asp_name_collision");
  Schema aux = parse_schema("Del(A)\n");
  ConstraintSet cs2 = parse_constraints("dc c: !exists Del(x)\n", aux);
  CHECK(error_code([&] { emit_repair_program(Instance(aux, {}), cs2); }) ==
        "asp_name_collision");
}

TEST_CASE("parsing solver transcripts") {
  SolverOutput models = parse_solver_output(slurp(data("solver_output/running_example_models.txt")));
  REQUIRE(models.models.size() == 2);
  CHECK(models.models[0].dist == 2);
  CHECK(models.models[0].deleted == tids({3, 4}));
  CHECK(models.models[1].dist == 1);
  CHECK(models.models[1].deleted == tids({1}));
  CHECK_FALSE(models.best.has_value());
  CHECK(models.answers.empty());

  SolverOutput best = parse_solver_output(slurp(data("solver_output/running_example_best.txt")));
  REQUIRE(best.best.has_value());
  CHECK(best.best->dist == 1);
  CHECK(best.best->deleted == tids({1}));
  CHECK(best.cost == "<[1:1]>");

  SolverOutput brave = parse_solver_output(slurp(data("solver_output/running_example_brave.txt")));
  CHECK(brave.answers == std::vector<std::string>{"1", "2"});

  CHECK(error_code([] { parse_solver_output("{p(1,a)"); }) == "solver_output");
}

TEST_CASE("external solver invocation") {
  std::string fake = fake_solver(data("solver_output/running_example_models.txt"));
  AspProgram p = emit_repair_program(example1_instance(), example1_constraints());
  SolverResult r = run_external_solver(p, fake);
  CHECK(r.dist == 1);
  CHECK(r.deleted == tids({1}));
  std::remove(fake.c_str());

  CHECK(error_code([&] { run_external_solver(p, "/nonexistent/dlv"); }) ==
        "solver_unavailable");
  CHECK_FALSE(find_asp_solver("/nonexistent/dlv").has_value());
}

TEST_CASE("real solver, when one is configured") {
  auto solver = find_asp_solver();
  if (!solver) {
    MESSAGE("no ASP solver configured; set INCMETER_ASP_SOLVER to run this leg");
    return;
  }
  SolverResult r = run_external_solver(
      emit_repair_program(example1_instance(), example1_constraints()), *solver);
  CHECK(r.dist == 1);
  SolverResult brave = run_external_solver(
      emit_repair_program(example1_instance(), example1_constraints(), AspStyle::kNormal,
                          true, false),
      *solver, {"-brave"});
  CHECK(brave.output.answers == std::vector<std::string>{"1", "2"});
}
