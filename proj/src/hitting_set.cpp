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

#include "incmeter/hitting_set.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "incmeter/errors.hpp"

namespace incmeter::hs {
namespace {

class BranchAndBound {
 public:
  BranchAndBound(const SetSystem& system, std::uint64_t budget, Set upper)
      : sys_(system),
        budget_(budget),
        best_(std::move(upper)),
        incidence_(system.num_elements),
        chosen_(system.num_elements, 0),
        forbidden_(system.num_elements, 0),
        hits_(system.sets.size(), 0),
        mark_(system.num_elements, 0) {
    for (std::size_t s = 0; s < sys_.sets.size(); ++s) {
      for (Element e : sys_.sets[s]) incidence_[e].push_back(s);
    }
  }

  Set run() {
    search();
    std::sort(best_.begin(), best_.end());
    return best_;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  void choose(Element e, int delta) {
    chosen_[e] = delta > 0;
    for (std::size_t s : incidence_[e]) hits_[s] += delta;
  }

  void search() {
    if (++nodes_ > budget_) {
      throw ResourceLimitError(
          "exact hitting-set search exceeded node budget of " +
              std::to_string(budget_),
          best_.size(), lower_seen_);
    }

    // Pick the unhit set with fewest allowed elements.
    std::size_t pick = kNone;
    std::size_t pick_size = std::numeric_limits<std::size_t>::max();
    for (std::size_t s = 0; s < sys_.sets.size(); ++s) {
      if (hits_[s]) continue;
      std::size_t allowed = 0;
      for (Element e : sys_.sets[s]) allowed += !forbidden_[e];
      if (allowed == 0) return;  // cannot be hit in this branch
      if (allowed < pick_size) {
        pick_size = allowed;
        pick = s;
      }
    }
    if (pick == kNone) {
      if (current_.size() < best_.size()) best_ = current_;
      return;
    }

    // Greedy packing of pairwise disjoint unhit sets; each needs its own
    // new element.
    ++epoch_;
    std::size_t packing = 0;
    for (std::size_t s = 0; s < sys_.sets.size(); ++s) {
      if (hits_[s]) continue;
      bool disjoint = true;
      for (Element e : sys_.sets[s]) {
        if (!forbidden_[e] && mark_[e] == epoch_) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      ++packing;
      for (Element e : sys_.sets[s]) mark_[e] = epoch_;
    }
    if (current_.empty()) lower_seen_ = packing;
    if (current_.size() + packing >= best_.size()) return;

    std::vector<std::pair<std::size_t, Element>> order;
    for (Element e : sys_.sets[pick]) {
      if (forbidden_[e]) continue;
      std::size_t degree = 0;
      for (std::size_t s : incidence_[e]) degree += hits_[s] == 0;
      order.emplace_back(degree, e);
    }
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });

    std::vector<Element> newly_forbidden;
    for (const auto& [degree, e] : order) {
      choose(e, +1);
      current_.push_back(e);
      search();
      current_.pop_back();
      choose(e, -1);
      forbidden_[e] = 1;
      newly_forbidden.push_back(e);
    }
    for (Element e : newly_forbidden) forbidden_[e] = 0;
  }

  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  const SetSystem& sys_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  Set best_;
  Set current_;
  std::size_t lower_seen_ = 0;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<char> chosen_;
  std::vector<char> forbidden_;
  std::vector<int> hits_;
  std::vector<std::uint64_t> mark_;
  std::uint64_t epoch_ = 0;
};

}  // namespace

bool hits_all(const SetSystem& system, const Set& chosen) {
  std::vector<char> in(system.num_elements, 0);
  for (Element e : chosen) in[e] = 1;
  for (const Set& s : system.sets) {
    if (std::none_of(s.begin(), s.end(), [&](Element e) { return in[e]; })) {
      return false;
    }
  }
  return true;
}

Set take_whole_sets(const SetSystem& system) {
  std::vector<char> in(system.num_elements, 0);
  Set out;
  for (const Set& s : system.sets) {
    if (std::any_of(s.begin(), s.end(), [&](Element e) { return in[e]; })) {
      continue;
    }
    for (Element e : s) {
      in[e] = 1;
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Set minimum_hitting_set(const SetSystem& system, std::uint64_t node_budget,
                        Set initial_upper, SearchStats* stats) {
  if (system.sets.empty()) return {};
  if (!hits_all(system, initial_upper)) initial_upper = take_whole_sets(system);
  BranchAndBound bb(system, node_budget, std::move(initial_upper));
  Set out = bb.run();
  if (stats) stats->nodes = bb.nodes();
  return out;
}

Set brute_force_minimum(const SetSystem& system, std::size_t max_active) {
  Set active;
  for (const Set& s : system.sets) active.insert(active.end(), s.begin(), s.end());
  std::sort(active.begin(), active.end());
  active.erase(std::unique(active.begin(), active.end()), active.end());
  if (active.size() > max_active) {
    throw ResourceLimitError("brute-force hitting set limited to " +
                             std::to_string(max_active) + " active elements, got " +
                             std::to_string(active.size()));
  }
  const std::size_t n = active.size();
  std::vector<std::uint32_t> masks;
  for (const Set& s : system.sets) {
    std::uint32_t m = 0;
    for (Element e : s) {
      m |= 1u << (std::lower_bound(active.begin(), active.end(), e) - active.begin());
    }
    masks.push_back(m);
  }
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k <= n; ++k) {
    idx.resize(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::uint32_t m = 0;
      for (std::size_t i : idx) m |= 1u << i;
      bool ok = std::all_of(masks.begin(), masks.end(),
                            [&](std::uint32_t s) { return (s & m) != 0; });
      if (ok) {
        Set out;
        for (std::size_t i : idx) out.push_back(active[i]);
        return out;
      }
      // Next combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return active;  // unreachable: the full active set hits everything
}

std::vector<Set> minimal_transversals(const SetSystem& system) {
  if (system.num_elements > 64) {
    throw ResourceLimitError("minimal transversal enumeration limited to 64 "
                             "elements, got " +
                             std::to_string(system.num_elements));
  }
  std::vector<std::uint64_t> masks;
  for (const Set& s : system.sets) {
    std::uint64_t m = 0;
    for (Element e : s) m |= std::uint64_t{1} << e;
    masks.push_back(m);
  }
  std::vector<std::uint64_t> found;

  // Every chosen element must keep a private set (hit by it alone).
  auto all_private = [&](std::uint64_t chosen) {
    std::uint64_t has_private = 0;
    for (std::uint64_t m : masks) {
      std::uint64_t h = m & chosen;
      if (h && (h & (h - 1)) == 0) has_private |= h;
    }
    return has_private == chosen;
  };

  auto rec = [&](auto&& self, std::uint64_t chosen, std::uint64_t forbidden) -> void {
    std::size_t pick = masks.size();
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if ((masks[i] & chosen) == 0) {
        pick = i;
        break;
      }
    }
    if (pick == masks.size()) {
      found.push_back(chosen);
      return;
    }
    std::uint64_t cand = masks[pick] & ~forbidden;
    std::uint64_t extra_forbidden = 0;
    while (cand) {
      std::uint64_t bit = cand & (~cand + 1);
      cand ^= bit;
      std::uint64_t next = chosen | bit;
      if (all_private(next)) self(self, next, forbidden | extra_forbidden);
      extra_forbidden |= bit;
    }
  };
  rec(rec, 0, 0);

  std::vector<Set> out;
  for (std::uint64_t m : found) {
    Set s;
    for (Element e = 0; e < 64; ++e) {
      if (m & (std::uint64_t{1} << e)) s.push_back(e);
    }
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace incmeter::hs
