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

#include "incmeter/conflicts.hpp"

#include <algorithm>
#include <unordered_set>

#include "incmeter/join.hpp"

namespace incmeter {
namespace {

struct TidSetHash {
  std::size_t operator()(const TidSet& s) const noexcept {
    std::size_t h = s.size();
    for (Tid t : s) h = h * 1000003u ^ t.value;
    return h;
  }
};

// Subset enumeration is 2^|s|; beyond this size fall back to pairwise tests.
constexpr std::size_t kMaxSubsetProbe = 12;

bool has_kept_proper_subset(
    const TidSet& s, const std::unordered_set<TidSet, TidSetHash>& kept,
    const std::vector<const TidSet*>& kept_list) {
  if (s.size() <= kMaxSubsetProbe) {
    const std::uint32_t full = (1u << s.size()) - 1;
    TidSet probe;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      probe.clear();
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (mask & (1u << i)) probe.push_back(s[i]);
      }
      if (kept.count(probe)) return true;
    }
    return false;
  }
  for (const TidSet* k : kept_list) {
    if (k->size() < s.size() &&
        std::includes(s.begin(), s.end(), k->begin(), k->end())) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<TidSet> minimize_sets(std::vector<TidSet> sets) {
  std::sort(sets.begin(), sets.end(), [](const TidSet& a, const TidSet& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::unordered_set<TidSet, TidSetHash> kept;
  std::vector<const TidSet*> kept_list;
  std::vector<TidSet> out;
  out.reserve(sets.size());
  for (auto& s : sets) {
    if (!kept.empty() && has_kept_proper_subset(s, kept, kept_list)) continue;
    out.push_back(s);
    auto [it, _] = kept.insert(std::move(s));
    kept_list.push_back(&*it);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ConflictHypergraph::ConflictHypergraph(
    TidSet vertices, std::vector<Hyperedge> labeled,
    const std::vector<std::string>& constraint_order)
    : vertices_(std::move(vertices)) {
  for (const auto& e : labeled) {
    vertices_.insert(vertices_.end(), e.tids.begin(), e.tids.end());
  }
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()),
                  vertices_.end());

  std::map<std::string, std::vector<TidSet>> by_constraint;
  for (auto& e : labeled) {
    std::sort(e.tids.begin(), e.tids.end());
    e.tids.erase(std::unique(e.tids.begin(), e.tids.end()), e.tids.end());
    by_constraint[e.constraint].push_back(std::move(e.tids));
  }
  auto rank_of = [&](const std::string& name) {
    auto it = std::find(constraint_order.begin(), constraint_order.end(), name);
    return static_cast<std::size_t>(it - constraint_order.begin());
  };
  std::vector<std::string> names;
  for (const auto& [name, _] : by_constraint) names.push_back(name);
  std::stable_sort(names.begin(), names.end(),
                   [&](const std::string& a, const std::string& b) {
                     return rank_of(a) < rank_of(b);
                   });
  std::vector<TidSet> all;
  for (const auto& name : names) {
    for (auto& s : minimize_sets(std::move(by_constraint[name]))) {
      all.push_back(s);
      labeled_.push_back(Hyperedge{std::move(s), name});
    }
  }
  edges_ = minimize_sets(std::move(all));
  for (const auto& e : edges_) rank_ = std::max(rank_, e.size());
}

ConflictHypergraph ConflictHypergraph::from_edges(TidSet vertices,
                                                  std::vector<TidSet> edges) {
  std::vector<Hyperedge> labeled;
  labeled.reserve(edges.size());
  for (auto& e : edges) labeled.push_back(Hyperedge{std::move(e), ""});
  return ConflictHypergraph(std::move(vertices), std::move(labeled));
}

bool ConflictHypergraph::is_hitting_set(const TidSet& deleted) const {
  for (const auto& e : edges_) {
    bool hit = std::any_of(e.begin(), e.end(), [&](Tid t) {
      return std::binary_search(deleted.begin(), deleted.end(), t);
    });
    if (!hit) return false;
  }
  return true;
}

std::vector<TidSet> violation_images(
    const Instance& instance, const DenialConstraint& dc,
    const std::function<bool(std::size_t, std::size_t)>& filter) {
  std::vector<TidSet> images;
  BodyMatcher matcher(instance, dc);
  const auto& tuples = instance.tuples();
  matcher.for_each(
      [&](BodyMatcher::Assignment rows) {
        TidSet s;
        s.reserve(rows.size());
        for (std::size_t r : rows) s.push_back(tuples[r].tid);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        images.push_back(std::move(s));
        return true;
      },
      filter);
  return images;
}

ConflictHypergraph build_hypergraph(const Instance& instance,
                                    const ConstraintSet& constraints) {
  std::vector<Hyperedge> labeled;
  std::vector<std::string> order;
  for (const auto& dc : constraints.constraints()) {
    order.push_back(dc.name);
    for (auto& s : minimize_sets(violation_images(instance, dc))) {
      labeled.push_back(Hyperedge{std::move(s), dc.name});
    }
  }
  return ConflictHypergraph(instance.tids(), std::move(labeled), order);
}

DegreeTable vertex_degrees(const ConflictHypergraph& hg) {
  DegreeTable table;
  for (Tid v : hg.vertices()) table.degree[v] = 0;
  for (const auto& e : hg.edges()) {
    for (Tid t : e) ++table.degree[t];
  }
  for (const auto& [t, d] : table.degree) {
    if (d > table.max_degree) {
      table.max_degree = d;
      table.argmax = t;
    }
  }
  return table;
}

void dump_edges(std::ostream& os, const ConflictHypergraph& hg) {
  for (const auto& e : hg.labeled_edges()) {
    os << e.constraint << ": ";
    for (std::size_t i = 0; i < e.tids.size(); ++i) {
      if (i) os << ',';
      os << e.tids[i].value;
    }
    os << '\n';
  }
}

}  // namespace incmeter
