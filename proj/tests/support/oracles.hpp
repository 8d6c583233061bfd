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

// Slow reference implementations used only by tests. None of them touches
// the join engine, the hypergraph builder or the hitting-set search: they
// enumerate assignments, subsets and LP bases directly.

#ifndef INCMETER_TESTS_ORACLES_HPP_
#define INCMETER_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "incmeter/conflicts.hpp"
#include "incmeter/model.hpp"
#include "incmeter/rational.hpp"
#include "incmeter/repair.hpp"

namespace incmeter::testing {

// Tid images of every satisfying assignment, by full cartesian product.
inline std::vector<TidSet> naive_violations(const Instance& inst,
                                            const DenialConstraint& dc) {
  std::vector<TidSet> out;
  const auto& tuples = inst.tuples();
  const std::size_t m = dc.atoms.size();
  std::vector<std::size_t> pick(m, 0);
  if (tuples.empty()) return out;
  auto null = [](const std::string& v) { return v == kNullToken; };
  while (true) {
    bool ok = true;
    std::map<std::string, std::string> env;
    for (std::size_t i = 0; i < m && ok; ++i) {
      const Tuple& t = tuples[pick[i]];
      const Atom& a = dc.atoms[i];
      if (t.predicate != a.predicate) {
        ok = false;
        break;
      }
      for (std::size_t j = 0; j < a.terms.size() && ok; ++j) {
        const Term& term = a.terms[j];
        const std::string& v = t.values[j];
        if (!term.is_variable()) {
          ok = !null(v) && v == term.text;
        } else if (auto it = env.find(term.text); it != env.end()) {
          ok = !null(v) && !null(it->second) && v == it->second;
        } else {
          env[term.text] = v;
        }
      }
    }
    for (std::size_t c = 0; c < dc.comparisons.size() && ok; ++c) {
      const Comparison& cmp = dc.comparisons[c];
      auto val = [&](const Term& t) {
        return t.is_variable() ? env.at(t.text) : t.text;
      };
      ok = compare_values(val(cmp.lhs), cmp.op, val(cmp.rhs));
    }
    if (ok) {
      TidSet s;
      for (std::size_t r : pick) s.push_back(tuples[r].tid);
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      out.push_back(std::move(s));
    }
    std::size_t i = 0;
    while (i < m && ++pick[i] == tuples.size()) pick[i++] = 0;
    if (i == m) break;
  }
  return out;
}

inline bool naive_consistent(const Instance& inst, const ConstraintSet& cs) {
  for (const auto& dc : cs.constraints()) {
    if (!naive_violations(inst, dc).empty()) return false;
  }
  return true;
}

// Sub-instance keeping the tuples whose index bit is set in `mask`.
inline Instance sub_instance(const Instance& inst, std::uint64_t mask) {
  std::vector<Tuple> kept;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (mask >> i & 1) kept.push_back(inst.tuples()[i]);
  }
  return Instance(inst.schema(), std::move(kept), {},
                  inst.allows_nulls() ? Instance::Nulls::kAllowed
                                      : Instance::Nulls::kForbidden);
}

inline TidSet mask_tids(const Instance& inst, std::uint64_t mask) {
  TidSet out;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    if (mask >> i & 1) out.push_back(inst.tuples()[i].tid);
  }
  return out;
}

// Consistent subsets as masks over tuple indices.
inline std::vector<std::uint64_t> consistent_subsets(const Instance& inst,
                                                     const ConstraintSet& cs) {
  std::vector<std::uint64_t> out;
  const std::uint64_t total = std::uint64_t{1} << inst.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (naive_consistent(sub_instance(inst, mask), cs)) out.push_back(mask);
  }
  return out;
}

// Subset-maximal consistent subsets, as sorted kept-tid sets.
inline std::vector<TidSet> oracle_s_repairs(const Instance& inst,
                                            const ConstraintSet& cs) {
  auto cons = consistent_subsets(inst, cs);
  std::set<std::uint64_t> good(cons.begin(), cons.end());
  std::vector<TidSet> out;
  for (std::uint64_t m : cons) {
    bool maximal = true;
    for (std::size_t i = 0; i < inst.size() && maximal; ++i) {
      if (!(m >> i & 1) && good.count(m | (std::uint64_t{1} << i))) maximal = false;
    }
    if (maximal) out.push_back(mask_tids(inst, m));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t oracle_min_deletions(const Instance& inst,
                                        const ConstraintSet& cs) {
  std::size_t best = inst.size();
  for (std::uint64_t m : consistent_subsets(inst, cs)) {
    best = std::min(best, inst.size() - static_cast<std::size_t>(__builtin_popcountll(m)));
  }
  return best;
}

// Fewest cells to null (exhaustive over all cells); nullopt if even nulling
// every cell leaves a violation.
inline std::optional<std::size_t> oracle_min_null_changes(
    const Instance& inst, const ConstraintSet& cs) {
  std::vector<CellChange> cells;
  for (const Tuple& t : inst.tuples()) {
    for (std::size_t j = 0; j < t.values.size(); ++j) {
      cells.push_back({t.tid, j + 1});
    }
  }
  const std::uint64_t total = std::uint64_t{1} << cells.size();
  std::optional<std::size_t> best;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::size_t k = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (best && k >= *best) continue;
    std::vector<Tuple> tuples = inst.tuples();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!(mask >> c & 1)) continue;
      for (Tuple& t : tuples) {
        if (t.tid == cells[c].tid) t.values[cells[c].position - 1] = std::string(kNullToken);
      }
    }
    Instance changed(inst.schema(), std::move(tuples), {},
                     Instance::Nulls::kAllowed);
    if (naive_consistent(changed, cs)) best = k;
  }
  return best;
}

// Optimum of min sum w s.t. sum_{v in e} w_v >= 1, w >= 0, by enumerating
// every basis of n tight constraints and solving it exactly.
inline Rational oracle_lp_optimum(const ConflictHypergraph& hg) {
  if (!hg.has_edges()) return Rational(0);
  TidSet active;
  for (const auto& e : hg.edges()) active.insert(active.end(), e.begin(), e.end());
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  const std::size_t n = active.size();
  // Rows: edges then nonnegativity; row . w >= rhs.
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& e : hg.edges()) {
    std::vector<Rational> r(n, Rational(0));
    for (Tid t : e) {
      r[std::lower_bound(active.begin(), active.end(), t) - active.begin()] = Rational(1);
    }
    rows.push_back(r);
    rhs.push_back(Rational(1));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> r(n, Rational(0));
    r[i] = Rational(1);
    rows.push_back(r);
    rhs.push_back(Rational(0));
  }
  std::optional<Rational> best;
  std::vector<bool> sel(rows.size(), false);
  std::fill(sel.end() - static_cast<std::ptrdiff_t>(n), sel.end(), true);
  do {
    std::vector<std::vector<Rational>> a;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!sel[i]) continue;
      auto r = rows[i];
      r.push_back(rhs[i]);
      a.push_back(std::move(r));
    }
    bool singular = false;
    for (std::size_t col = 0; col < n && !singular; ++col) {
      std::size_t piv = col;
      while (piv < n && a[piv][col].is_zero()) ++piv;
      if (piv == n) {
        singular = true;
        break;
      }
      std::swap(a[piv], a[col]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || a[r][col].is_zero()) continue;
        Rational f = a[r][col] / a[col][col];
        for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
      }
    }
    if (singular) continue;
    std::vector<Rational> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = a[i][n] / a[i][i];
    bool feasible = true;
    for (std::size_t i = 0; i < rows.size() && feasible; ++i) {
      Rational s(0);
      for (std::size_t j = 0; j < n; ++j) s += rows[i][j] * w[j];
      feasible = s >= rhs[i];
    }
    if (!feasible) continue;
    Rational obj(0);
    for (const auto& x : w) obj += x;
    if (!best || obj < *best) best = obj;
  } while (std::next_permutation(sel.begin(), sel.end()));
  return *best;
}

}  // namespace incmeter::testing

#endif  // INCMETER_TESTS_ORACLES_HPP_
