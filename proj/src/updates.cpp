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

#include "incmeter/updates.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <unordered_set>

#include "incmeter/errors.hpp"
#include "incmeter/measures.hpp"

namespace incmeter {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

// Splits `a, "b,c", d` into values; `offset` is the column of s[0].
std::vector<std::string> split_values(std::string_view s, std::size_t line,
                                      std::size_t offset) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (true) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::string value;
    if (i < s.size() && s[i] == '"') {
      ++i;
      bool closed = false;
      while (i < s.size()) {
        if (s[i] == '"') {
          if (i + 1 < s.size() && s[i + 1] == '"') {
            value += '"';
            i += 2;
            continue;
          }
          closed = true;
          ++i;
          break;
        }
        value += s[i++];
      }
      if (!closed) throw ParseError(line, offset + i, "unterminated string");
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    } else {
      std::size_t start = i;
      while (i < s.size() && s[i] != ',') ++i;
      value = std::string(trim(s.substr(start, i - start)));
      if (value.empty()) throw ParseError(line, offset + start, "empty value");
    }
    if (value == kNullToken) {
      throw ParseError(line, offset + i, "value NULL is reserved");
    }
    out.push_back(std::move(value));
    if (i >= s.size()) break;
    if (s[i] != ',') throw ParseError(line, offset + i, "expected ','");
    ++i;
  }
  return out;
}

Rational size_ratio(std::size_t num, std::size_t den) {
  return Rational(static_cast<std::int64_t>(num),
                  static_cast<std::int64_t>(den));
}

Rational g3(const Instance& instance, const ConstraintSet& constraints,
            const ExactOptions& options) {
  SolverConfig config;
  config.exact = options;
  return inc_deg_g3(instance, constraints, config).value;
}

BoundCheck bound(std::string name, Rational lhs, Rational rhs) {
  bool holds = lhs <= rhs;
  return BoundCheck{std::move(name), lhs, rhs, holds};
}

}  // namespace

UpdateDelta parse_delta(std::string_view text, const Schema& schema) {
  UpdateDelta delta;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::size_t col0 = static_cast<std::size_t>(line.data() - raw.data()) + 1;
    std::string_view body = trim(line.substr(1));
    const std::size_t body_col =
        col0 + static_cast<std::size_t>(body.data() - line.data());
    if (line.front() == '-') {
      std::uint32_t tid = 0;
      auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), tid);
      if (ec != std::errc() || ptr != body.data() + body.size() || tid == 0) {
        throw ParseError(line_no, body_col, "expected a positive tid");
      }
      delta.deletions.push_back(Tid{tid});
    } else if (line.front() == '+') {
      auto open = body.find('(');
      if (open == std::string_view::npos || body.back() != ')') {
        throw ParseError(line_no, body_col, "expected Pred(v1, ...)");
      }
      std::string pred(trim(body.substr(0, open)));
      const PredicateDecl* decl = schema.find(pred);
      if (decl == nullptr) {
        throw ParseError(line_no, body_col, "unknown predicate '" + pred + "'");
      }
      std::string_view args = body.substr(open + 1, body.size() - open - 2);
      auto values = split_values(args, line_no, body_col + open + 1);
      if (values.size() != decl->arity()) {
        throw ParseError(line_no, body_col,
                         "predicate " + pred + " expects " +
                             std::to_string(decl->arity()) + " values, got " +
                             std::to_string(values.size()));
      }
      delta.insertions.push_back(Insertion{std::move(pred), std::move(values)});
    } else {
      throw ParseError(line_no, col0, "expected '+' or '-'");
    }
  }
  return delta;
}

Instance apply_update(const Instance& instance, const UpdateDelta& delta,
                      TidSet* inserted) {
  std::set<Tid> deleted;
  for (Tid t : delta.deletions) {
    if (instance.find(t) == nullptr) {
      throw InputError("unknown_tid",
                       "cannot delete unknown tid " + std::to_string(t.value));
    }
    if (!deleted.insert(t).second) {
      throw InputError("duplicate_deletion",
                       "tid " + std::to_string(t.value) + " deleted twice");
    }
  }
  std::vector<Tuple> tuples;
  std::set<std::pair<std::string, std::vector<std::string>>> present;
  for (const Tuple& t : instance.tuples()) {
    if (deleted.count(t.tid)) continue;
    tuples.push_back(t);
    present.insert({t.predicate, t.values});
  }
  std::uint32_t next = instance.max_tid().value;
  if (inserted) inserted->clear();
  for (const Insertion& ins : delta.insertions) {
    if (!present.insert({ins.predicate, ins.values}).second) {
      throw InputError("duplicate_tuple",
                       "inserted tuple already present in " + ins.predicate);
    }
    Tid tid{++next};
    tuples.push_back(Tuple{tid, ins.predicate, ins.values});
    if (inserted) inserted->push_back(tid);
  }
  TidSet endo;
  for (Tid t : instance.endogenous()) {
    if (!deleted.count(t)) endo.push_back(t);
  }
  return Instance(instance.schema(), std::move(tuples), std::move(endo));
}

ConflictHypergraph incremental_hypergraph(const ConflictHypergraph& hg,
                                          const Instance& before,
                                          const UpdateDelta& delta,
                                          const ConstraintSet& constraints) {
  TidSet fresh;
  Instance after = apply_update(before, delta, &fresh);
  std::unordered_set<Tid, TidHash> deleted(delta.deletions.begin(),
                                           delta.deletions.end());

  std::vector<Hyperedge> labeled;
  for (const Hyperedge& e : hg.labeled_edges()) {
    bool gone = std::any_of(e.tids.begin(), e.tids.end(),
                            [&](Tid t) { return deleted.count(t) > 0; });
    if (!gone) labeled.push_back(e);
  }

  if (!fresh.empty()) {
    std::vector<char> is_new(after.size(), 0);
    for (std::size_t r = 0; r < after.size(); ++r) {
      is_new[r] = std::binary_search(fresh.begin(), fresh.end(),
                                     after.tuples()[r].tid);
    }
    for (const DenialConstraint& dc : constraints.constraints()) {
      // Partition by the first atom mapped to an inserted tuple.
      for (std::size_t k = 0; k < dc.atoms.size(); ++k) {
        auto filter = [&](std::size_t atom, std::size_t row) {
          if (atom < k) return !is_new[row];
          if (atom == k) return is_new[row] != 0;
          return true;
        };
        for (auto& s : violation_images(after, dc, filter)) {
          labeled.push_back(Hyperedge{std::move(s), dc.name});
        }
      }
    }
  }

  std::vector<std::string> order;
  for (const DenialConstraint& dc : constraints.constraints()) {
    order.push_back(dc.name);
  }
  return ConflictHypergraph(after.tids(), std::move(labeled), order);
}

std::string_view to_string(UpdateDirection d) {
  return d == UpdateDirection::kInsert ? "insert" : "delete";
}

bool BoundCheckReport::all_hold() const {
  return std::all_of(bounds.begin(), bounds.end(),
                     [](const BoundCheck& b) { return b.holds; });
}

BoundCheckReport check_insertion_bounds(const Instance& instance,
                                        const ConstraintSet& constraints,
                                        const UpdateDelta& delta,
                                        const ExactOptions& options) {
  if (!delta.deletions.empty()) {
    throw InputError("mixed_delta", "insertion bounds need an insert-only delta");
  }
  BoundCheckReport report;
  report.direction = UpdateDirection::kInsert;
  Instance after = apply_update(instance, delta);
  report.before = g3(instance, constraints, options);
  report.after = g3(after, constraints, options);
  const std::size_t m = delta.insertions.size();
  if (instance.empty() || m == 0) return report;
  report.epsilon = size_ratio(m, instance.size());
  report.applicable = report.epsilon < Rational(1);
  if (!report.applicable) return report;
  const Rational one(1);
  const Rational& eps = report.epsilon;
  report.bounds.push_back(bound("after <= before + 1/(1 + 1/eps)",
                                report.after,
                                report.before + one / (one + one / eps)));
  report.bounds.push_back(bound("before <= after / (1 - eps)", report.before,
                                report.after / (one - eps)));
  return report;
}

BoundCheckReport check_deletion_bounds(const Instance& instance,
                                       const ConstraintSet& constraints,
                                       const UpdateDelta& delta,
                                       const ExactOptions& options) {
  if (!delta.insertions.empty()) {
    throw InputError("mixed_delta", "deletion bounds need a delete-only delta");
  }
  BoundCheckReport report;
  report.direction = UpdateDirection::kDelete;
  Instance after = apply_update(instance, delta);
  ConflictHypergraph hg = build_hypergraph(instance, constraints);
  DegreeTable degrees = vertex_degrees(hg);
  for (Tid t : delta.deletions) {
    if (degrees.degree.at(t) > 0) report.deleted_participate = true;
  }
  SolverConfig config;
  config.exact = options;
  report.before = inc_deg_g3(instance, hg, config).value;
  report.after = g3(after, constraints, options);
  const std::size_t k = delta.deletions.size();
  if (instance.empty() || k == 0) return report;
  report.epsilon = size_ratio(k, instance.size());
  report.applicable = report.epsilon < Rational(1);
  if (!report.applicable) return report;
  const Rational one(1);
  const Rational& eps = report.epsilon;
  report.bounds.push_back(bound("after <= before / (1 - eps)", report.after,
                                report.before / (one - eps)));
  report.bounds.push_back(bound("before <= after / (1 - eps) + eps",
                                report.before,
                                report.after / (one - eps) + eps));
  if (!report.deleted_participate) {
    report.bounds.push_back(bound("before <= after / (1 - eps)", report.before,
                                  report.after / (one - eps)));
  }
  return report;
}

std::vector<BoundCheckReport> check_update_bounds(
    const Instance& instance, const ConstraintSet& constraints,
    const UpdateDelta& delta, const ExactOptions& options) {
  std::vector<BoundCheckReport> out;
  const Instance* current = &instance;
  Instance middle;
  if (!delta.deletions.empty()) {
    UpdateDelta del{{}, delta.deletions};
    out.push_back(check_deletion_bounds(instance, constraints, del, options));
    middle = apply_update(instance, del);
    current = &middle;
  }
  if (!delta.insertions.empty()) {
    UpdateDelta ins{delta.insertions, {}};
    out.push_back(check_insertion_bounds(*current, constraints, ins, options));
  }
  return out;
}

}  // namespace incmeter
