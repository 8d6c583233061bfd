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

// incmeter: inconsistency degrees of relational instances under denial
// constraints.
//
//   incmeter measure --data DIR [--schema F] [--constraints F] [options]
//
// Schema and constraints default to DIR/schema.txt and DIR/constraints.txt.
// Exit status: 0 success, 1 input error, 2 resource limit.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "incmeter/approx.hpp"
#include "incmeter/aspgen.hpp"
#include "incmeter/conflicts.hpp"
#include "incmeter/errors.hpp"
#include "incmeter/exact.hpp"
#include "incmeter/measures.hpp"
#include "incmeter/model.hpp"
#include "incmeter/nullrep.hpp"
#include "incmeter/rational.hpp"
#include "incmeter/updates.hpp"
#include "json.hpp"

namespace {

using incmeter::Rational;
using nlohmann::ordered_json;

struct RunConfig {
  std::string schema_path;
  std::string constraints_path;
  std::string data_dir;
  std::string endogenous_path;
  std::string format = "json";

  std::string solver = "exact";
  std::string semantics = "tuple";
  std::string normalization = "db";
  double eps = 0.1;
  std::uint64_t seed = 0;
  std::size_t reps = 5;
  std::uint64_t node_budget = 10'000'000;
  std::size_t max_tuples = 16;
  std::size_t max_cells = 24;

  std::string enumerate = "s";

  std::string asp_style = "normal";
  bool no_count = false;
  bool no_weak = false;
  std::string asp_output;
  bool run_solver = false;
  std::string solver_path;

  std::string delta_path;
  bool check_bounds = false;

  bool dump = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw incmeter::InputError("missing_file", "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Inputs {
  incmeter::Schema schema;
  incmeter::ConstraintSet constraints;
  incmeter::Instance instance;
};

Inputs load(const RunConfig& cfg) {
  namespace fs = std::filesystem;
  std::string schema_path = cfg.schema_path.empty()
                                ? (fs::path(cfg.data_dir) / "schema.txt").string()
                                : cfg.schema_path;
  std::string constraints_path =
      cfg.constraints_path.empty()
          ? (fs::path(cfg.data_dir) / "constraints.txt").string()
          : cfg.constraints_path;
  Inputs in;
  in.schema = incmeter::parse_schema(read_file(schema_path));
  in.constraints =
      incmeter::parse_constraints(read_file(constraints_path), in.schema);
  in.instance =
      incmeter::load_instance_dir(cfg.data_dir, in.schema, cfg.endogenous_path);
  return in;
}

ordered_json tids_json(const incmeter::TidSet& tids) {
  ordered_json a = ordered_json::array();
  for (auto t : tids) a.push_back(t.value);
  return a;
}

void put_fraction(ordered_json& j, const Rational& r) {
  j["numerator"] = r.numerator();
  j["denominator"] = r.denominator();
  j["decimal"] = r.to_decimal(6);
}

incmeter::Rational to_rational_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw incmeter::InputError("bad_parameter", "--eps must lie in (0, 1]");
  }
  // Six decimal digits are plenty for an accuracy parameter.
  return Rational(static_cast<std::int64_t>(eps * 1'000'000 + 0.5), 1'000'000);
}

ordered_json cmd_measure(const RunConfig& cfg, const Inputs& in,
                         std::string& text) {
  incmeter::MeasureReport report;
  std::optional<incmeter::FractionalCover> lp;
  std::string method;
  if (cfg.semantics == "null") {
    incmeter::NullRepairOptions opts;
    opts.max_cells = cfg.max_cells;
    opts.node_budget = cfg.node_budget;
    report = incmeter::inc_deg_g3_null(in.instance, in.constraints, opts);
    method = "exact";
  } else if (cfg.semantics == "endogenous") {
    incmeter::ExactOptions opts{cfg.node_budget};
    auto norm = cfg.normalization == "endogenous"
                    ? incmeter::Normalization::kEndogenousSize
                    : incmeter::Normalization::kDbSize;
    report = incmeter::inc_deg_g3_endogenous(in.instance, in.constraints, norm,
                                             opts);
    method = "exact";
  } else {
    incmeter::SolverConfig sc;
    sc.exact.node_budget = cfg.node_budget;
    sc.eps = to_rational_eps(cfg.eps);
    sc.seed = cfg.seed;
    sc.rounding.repetitions = cfg.reps;
    if (cfg.solver == "local-ratio") {
      sc.solver = incmeter::SolverChoice::kLocalRatio;
    } else if (cfg.solver == "randomized") {
      sc.solver = incmeter::SolverChoice::kRandomized;
    }
    auto hg = incmeter::build_hypergraph(in.instance, in.constraints);
    report = incmeter::inc_deg_g3(in.instance, hg, sc);
    method = std::string(incmeter::to_string(report.solution->method));
    if (sc.solver == incmeter::SolverChoice::kRandomized) {
      lp = incmeter::lp_fractional_cover(hg, sc.eps, sc.rounding.lp);
    }
  }

  ordered_json j;
  j["command"] = "measure";
  j["kind"] = std::string(incmeter::to_string(report.kind));
  j["semantics"] = cfg.semantics;
  j["normalization"] = std::string(incmeter::to_string(report.normalization));
  put_fraction(j, report.value);
  j["exact"] = report.exact;
  j["irreparable"] = report.irreparable;
  j["method"] = method;
  j["witness_deleted_tids"] = report.solution ? tids_json(report.solution->deleted)
                                              : ordered_json::array();
  ordered_json changes = ordered_json::array();
  if (report.null_solution) {
    for (const auto& c : report.null_solution->changes) {
      changes.push_back({{"tid", c.tid.value}, {"position", c.position}});
    }
  }
  j["witness_null_changes"] = changes;
  if (lp) {
    j["lp"] = {{"objective", lp->objective.to_string()},
               {"lower_bound", lp->lower_bound.to_string()},
               {"certified", lp->certified}};
  } else {
    j["lp"] = nullptr;
  }
  if (report.irreparable) {
    j["note"] = "irreparable";
  } else if (report.value.is_zero()) {
    j["note"] = "consistent";
  } else {
    j["note"] = nullptr;
  }

  std::ostringstream os;
  os << j["kind"].get<std::string>() << " = " << report.value << " ("
     << report.value.to_decimal(6) << ")";
  if (!report.exact) os << " [upper bound, " << method << "]";
  if (report.irreparable) os << " [irreparable]";
  os << "\n";
  if (report.solution) {
    os << "deleted:";
    for (auto t : report.solution->deleted) os << " " << t.value;
    os << "\n";
  }
  if (report.null_solution) {
    os << "nulled:";
    for (const auto& c : report.null_solution->changes) {
      os << " " << c.tid.value << ";" << c.position;
    }
    os << "\n";
  }
  text = os.str();
  return j;
}

ordered_json cmd_repairs(const RunConfig& cfg, const Inputs& in,
                         std::string& text) {
  incmeter::EnumerationOptions opts{cfg.max_tuples};
  incmeter::RepairSet set;
  if (cfg.enumerate == "c") {
    set = incmeter::enumerate_c_repairs(in.instance, in.constraints, opts);
  } else {
    set = incmeter::enumerate_s_repairs(in.instance, in.constraints, opts);
  }
  ordered_json j;
  j["command"] = "repairs";
  j["kind"] = cfg.enumerate;
  j["count"] = set.repairs.size();
  ordered_json reps = ordered_json::array();
  std::ostringstream os;
  for (const auto& r : set.repairs) {
    reps.push_back(tids_json(r));
    os << "{";
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i].value;
    os << "}\n";
  }
  j["repairs"] = reps;
  text = os.str();
  return j;
}

ordered_json cmd_alt_measures(const RunConfig& cfg, const Inputs& in,
                              std::string& text) {
  incmeter::EnumerationOptions opts{cfg.max_tuples};
  std::vector<incmeter::MeasureReport> reports{
      incmeter::measure_count_srep(in.instance, in.constraints, opts),
      incmeter::measure_count_all(in.instance, in.constraints, opts),
      incmeter::measure_jaccard(in.instance, in.constraints, opts)};
  ordered_json j;
  j["command"] = "alt-measures";
  ordered_json arr = ordered_json::array();
  std::ostringstream os;
  for (const auto& r : reports) {
    ordered_json m;
    m["kind"] = std::string(incmeter::to_string(r.kind));
    put_fraction(m, r.value);
    arr.push_back(m);
    os << incmeter::to_string(r.kind) << " = " << r.value << "\n";
  }
  j["measures"] = arr;
  text = os.str();
  return j;
}

ordered_json cmd_emit_asp(const RunConfig& cfg, const Inputs& in,
                          std::string& text) {
  auto style = cfg.asp_style == "disjunctive" ? incmeter::AspStyle::kDisjunctive
                                              : incmeter::AspStyle::kNormal;
  auto prog = incmeter::emit_repair_program(in.instance, in.constraints, style,
                                            !cfg.no_count, !cfg.no_weak);
  std::string program = prog.to_text();
  if (!cfg.asp_output.empty()) {
    std::ofstream out(cfg.asp_output, std::ios::binary);
    if (!out) {
      throw incmeter::InputError("missing_file",
                                 "cannot write '" + cfg.asp_output + "'");
    }
    out << program;
  }
  ordered_json j;
  j["command"] = "emit-asp";
  j["program"] = program;
  j["solver"] = nullptr;
  text = cfg.asp_output.empty() ? program : "";
  if (cfg.run_solver) {
    auto path = incmeter::find_asp_solver(cfg.solver_path);
    if (!path) {
      j["solver"] = {{"available", false}};
      text += "% ASP solver not available\n";
    } else {
      auto res = incmeter::run_external_solver(prog, *path);
      auto exact = incmeter::min_hitting_set(
          incmeter::build_hypergraph(in.instance, in.constraints),
          incmeter::ExactOptions{cfg.node_budget});
      ordered_json s;
      s["available"] = true;
      s["dist"] = res.dist ? ordered_json(*res.dist) : ordered_json(nullptr);
      s["deleted_tids"] = tids_json(res.deleted);
      s["agrees_with_exact"] =
          res.dist && *res.dist == static_cast<std::int64_t>(exact.deleted.size());
      j["solver"] = s;
      text += "% solver dist = " +
              (res.dist ? std::to_string(*res.dist) : std::string("none")) + "\n";
    }
  }
  return j;
}

ordered_json bound_json(const incmeter::BoundCheckReport& r) {
  ordered_json j;
  j["direction"] = std::string(incmeter::to_string(r.direction));
  j["applicable"] = r.applicable;
  j["epsilon"] = r.epsilon.to_string();
  j["before"] = r.before.to_string();
  j["after"] = r.after.to_string();
  j["deleted_participate"] = r.deleted_participate;
  ordered_json arr = ordered_json::array();
  for (const auto& b : r.bounds) {
    arr.push_back({{"name", b.name},
                   {"lhs", b.lhs.to_string()},
                   {"rhs", b.rhs.to_string()},
                   {"holds", b.holds}});
  }
  j["bounds"] = arr;
  return j;
}

ordered_json cmd_update(const RunConfig& cfg, const Inputs& in,
                        std::string& text) {
  auto delta = incmeter::parse_delta(read_file(cfg.delta_path), in.schema);
  incmeter::TidSet inserted;
  auto after = incmeter::apply_update(in.instance, delta, &inserted);
  auto hg_before = incmeter::build_hypergraph(in.instance, in.constraints);
  auto hg_after = incmeter::incremental_hypergraph(hg_before, in.instance, delta,
                                                   in.constraints);
  incmeter::SolverConfig sc;
  sc.exact.node_budget = cfg.node_budget;
  auto before_m = incmeter::inc_deg_g3(in.instance, hg_before, sc);
  auto after_m = incmeter::inc_deg_g3(after, hg_after, sc);

  ordered_json j;
  j["command"] = "update";
  j["inserted_tids"] = tids_json(inserted);
  incmeter::TidSet deleted(delta.deletions.begin(), delta.deletions.end());
  std::sort(deleted.begin(), deleted.end());
  j["deleted_tids"] = tids_json(deleted);
  ordered_json b, a;
  put_fraction(b, before_m.value);
  put_fraction(a, after_m.value);
  j["before"] = b;
  j["after"] = a;
  std::ostringstream os;
  os << "before = " << before_m.value << "\nafter = " << after_m.value << "\n";
  ordered_json checks = ordered_json::array();
  bool all = true;
  if (cfg.check_bounds) {
    for (const auto& r : incmeter::check_update_bounds(
             in.instance, in.constraints, delta,
             incmeter::ExactOptions{cfg.node_budget})) {
      checks.push_back(bound_json(r));
      all = all && r.all_hold();
      os << incmeter::to_string(r.direction) << " eps = " << r.epsilon;
      if (!r.applicable) os << " (not applicable)";
      os << "\n";
      for (const auto& bc : r.bounds) {
        os << "  " << bc.name << ": " << bc.lhs << " <= " << bc.rhs << " "
           << (bc.holds ? "holds" : "VIOLATED") << "\n";
      }
    }
  }
  j["bound_checks"] = checks;
  j["all_hold"] = all;
  text = os.str();
  return j;
}

ordered_json cmd_conflicts(const RunConfig& cfg, const Inputs& in,
                           std::string& text) {
  auto hg = incmeter::build_hypergraph(in.instance, in.constraints);
  auto deg = incmeter::vertex_degrees(hg);
  ordered_json j;
  j["command"] = "conflicts";
  j["num_vertices"] = hg.vertices().size();
  j["num_edges"] = hg.edges().size();
  j["rank"] = hg.rank();
  j["max_degree"] = deg.max_degree;
  ordered_json edges = ordered_json::array();
  for (const auto& e : hg.labeled_edges()) {
    edges.push_back({{"constraint", e.constraint}, {"tids", tids_json(e.tids)}});
  }
  j["edges"] = edges;
  std::ostringstream os;
  if (cfg.dump) {
    incmeter::dump_edges(os, hg);
  } else {
    os << hg.edges().size() << " edges, rank " << hg.rank() << "\n";
  }
  text = os.str();
  return j;
}

int report_error(const RunConfig& cfg, const std::string& code,
                 const std::string& message, int status) {
  if (cfg.format == "json") {
    ordered_json j;
    j["error"] = {{"code", code}, {"message", message}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "incmeter: " << code << ": " << message << "\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Inconsistency degrees of relational instances under denial constraints"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--data", cfg.data_dir, "Directory with one <Pred>.csv per predicate")
      ->required();
  app.add_option("--schema", cfg.schema_path, "Schema file (default DATA/schema.txt)");
  app.add_option("--constraints", cfg.constraints_path,
                 "Constraint file (default DATA/constraints.txt)");
  app.add_option("--endogenous", cfg.endogenous_path,
                 "Endogenous tid list (default DATA/endogenous.txt if present)");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--node-budget", cfg.node_budget, "Exact search node budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-tuples", cfg.max_tuples,
                 "Tuple limit for repair enumeration")
      ->check(CLI::Range(1, 62));

  auto* measure = app.add_subcommand("measure", "Repair-based inconsistency degree");
  measure->add_option("--solver", cfg.solver)
      ->check(CLI::IsMember({"exact", "local-ratio", "randomized"}));
  measure->add_option("--semantics", cfg.semantics)
      ->check(CLI::IsMember({"tuple", "endogenous", "null"}));
  measure->add_option("--normalization", cfg.normalization,
                      "Denominator for endogenous semantics")
      ->check(CLI::IsMember({"db", "endogenous"}));
  measure->add_option("--eps", cfg.eps, "LP accuracy for --solver randomized");
  measure->add_option("--seed", cfg.seed);
  measure->add_option("--reps", cfg.reps, "Rounding repetitions")
      ->check(CLI::Range(1, 1000));
  measure->add_option("--max-cells", cfg.max_cells,
                      "Candidate cell limit for null semantics")
      ->check(CLI::Range(1, 4096));

  auto* repairs = app.add_subcommand("repairs", "Enumerate repairs");
  repairs->add_option("--enumerate", cfg.enumerate)
      ->check(CLI::IsMember({"s", "c"}));

  app.add_subcommand("alt-measures", "count_srep, count_all_subsets and jaccard");

  auto* asp = app.add_subcommand("emit-asp", "Emit a DLV-Complex repair program");
  asp->add_option("--style", cfg.asp_style)
      ->check(CLI::IsMember({"normal", "disjunctive"}));
  asp->add_flag("--no-count", cfg.no_count, "Omit the distance rules");
  asp->add_flag("--no-weak", cfg.no_weak, "Omit the weak constraint");
  asp->add_option("--output", cfg.asp_output, "Write the program to this file");
  asp->add_flag("--run", cfg.run_solver,
                "Run the solver (INCMETER_ASP_SOLVER or --solver-path)");
  asp->add_option("--solver-path", cfg.solver_path);

  auto* update = app.add_subcommand("update", "Apply a delta and re-measure");
  update->add_option("--delta", cfg.delta_path, "Delta file")->required();
  update->add_flag("--check-bounds", cfg.check_bounds);

  auto* conflicts = app.add_subcommand("conflicts", "Conflict hypergraph");
  conflicts->add_flag("--dump", cfg.dump, "List edges as `constraint: tids`");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    auto start = std::chrono::steady_clock::now();
    Inputs in = load(cfg);
    std::string text;
    ordered_json j;
    if (measure->parsed()) {
      j = cmd_measure(cfg, in, text);
    } else if (repairs->parsed()) {
      j = cmd_repairs(cfg, in, text);
    } else if (asp->parsed()) {
      j = cmd_emit_asp(cfg, in, text);
    } else if (update->parsed()) {
      j = cmd_update(cfg, in, text);
    } else if (conflicts->parsed()) {
      j = cmd_conflicts(cfg, in, text);
    } else {
      j = cmd_alt_measures(cfg, in, text);
    }
    auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start);
    if (cfg.format == "json") {
      j["elapsed_ms"] = elapsed.count();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << text;
    }
    return 0;
  } catch (const incmeter::InputError& e) {
    return report_error(cfg, e.code(), e.what(), 1);
  } catch (const incmeter::ResourceLimitError& e) {
    return report_error(cfg, "resource_limit", e.what(), 2);
  } catch (const incmeter::RationalOverflow& e) {
    return report_error(cfg, "resource_limit", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return report_error(cfg, "bad_parameter", e.what(), 1);
  }
}
