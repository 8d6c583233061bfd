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

// Repair programs in DLV-Complex syntax. Every database atom p(t, x) gets an
// annotated copy p_a(t, x, d) (deleted) or p_a(t, x, s) (stays); the stable
// models are the S-repairs and, under the weak constraint on del/1, the best
// models are the C-repairs.

#ifndef INCMETER_ASPGEN_HPP_
#define INCMETER_ASPGEN_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incmeter/model.hpp"

namespace incmeter {

enum class AspStyle { kDisjunctive, kNormal };

struct AspProgram {
  std::vector<std::string> facts;             // by tid
  std::vector<std::string> rules;             // repair, stays, del, counts
  std::vector<std::string> weak_constraints;
  std::vector<std::string> queries;

  // One statement per line; queries last when `with_queries` is set.
  std::string to_text(bool with_queries = true) const;
};

// Predicate names are lowercased. Throws InputError (code
// "asp_name_collision") when two predicates lowercase alike or a predicate
// clashes with a generated name (`<p>_a`, del, numDel, cardPred, cardDB,
// cardRep, cardRepDB, dist). `with_count` adds the distance rules and, unless
// `with_weak` is also set, the brave query `dist(X)?`.
AspProgram emit_repair_program(const Instance& instance,
                               const ConstraintSet& constraints,
                               AspStyle style = AspStyle::kNormal,
                               bool with_count = true, bool with_weak = true);

// Whitespace-insensitive token sequence with `%` comments dropped and
// variables renamed V1, V2, ... by first appearance within each statement.
std::vector<std::string> normalized_asp_tokens(std::string_view text);

struct SolverModel {
  std::vector<std::string> atoms;
  std::optional<std::int64_t> dist;
  TidSet deleted;
};

struct SolverOutput {
  std::vector<SolverModel> models;
  std::optional<SolverModel> best;        // from a `Best model:` line
  std::optional<std::string> cost;        // text after `Cost ([Weight:Level]):`
  std::vector<std::string> answers;       // brave or cautious query answers
};

// Parses the text printed by a DLV-style solver. Throws InputError (code
// "solver_output") on an unbalanced model line.
SolverOutput parse_solver_output(std::string_view text);

// The explicit path if non-empty, otherwise INCMETER_ASP_SOLVER; std::nullopt
// when neither names an executable file.
std::optional<std::string> find_asp_solver(const std::string& explicit_path = {});

struct SolverResult {
  // From the best model, or the least over all models; unset when the
  // solver printed query answers only.
  std::optional<std::int64_t> dist;
  TidSet deleted;  // deletions of that model
  SolverOutput output;
};

// Writes the program to a temporary file and runs `solver_path` on it with
// `flags`; queries are included only with a -brave or -cautious flag. Throws
// InputError (code "solver_unavailable") if the solver cannot be run.
SolverResult run_external_solver(const AspProgram& program,
                                 const std::string& solver_path,
                                 const std::vector<std::string>& flags = {});

}  // namespace incmeter

#endif  // INCMETER_ASPGEN_HPP_
