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

#include "incmeter/approx.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "incmeter/exact.hpp"
#include "incmeter/hitting_set.hpp"

namespace incmeter {
namespace {

// Weights live on the grid k / kGrid.
constexpr std::int64_t kGrid = std::int64_t{1} << 20;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

RepairSolution to_solution(const ConflictHypergraph& hg,
                           const IndexedHypergraph& ix, const hs::Set& picked,
                           Method method) {
  RepairSolution sol;
  for (hs::Element e : picked) sol.deleted.push_back(ix.elements[e]);
  std::sort(sol.deleted.begin(), sol.deleted.end());
  sol.repair_size = hg.vertices().size() - sol.deleted.size();
  sol.method = method;
  sol.optimal = false;
  return sol;
}

struct GridCover {
  std::vector<std::int64_t> primal;  // per element, numerators over kGrid
  std::vector<std::int64_t> dual;    // per set, numerators over kGrid
  bool certified = false;
  std::size_t iterations = 0;
};

GridCover solve_covering_lp(const hs::SetSystem& sys, double eps,
                            std::size_t max_iterations) {
  const std::size_t n = sys.num_elements;
  const std::size_t m = sys.sets.size();
  std::vector<std::vector<std::size_t>> incidence(n);
  for (std::size_t s = 0; s < m; ++s) {
    for (hs::Element e : sys.sets[s]) incidence[e].push_back(s);
  }

  const double step = eps / 4.0;
  std::vector<double> length(n, 1.0);
  std::vector<double> edge_len(m, 0.0);
  for (std::size_t s = 0; s < m; ++s) edge_len[s] = static_cast<double>(sys.sets[s].size());
  double total = static_cast<double>(n);

  std::vector<std::int64_t> routed(m, 0);
  std::vector<std::int64_t> load(n, 0);
  std::int64_t max_load = 0;
  std::int64_t rounds = 0;

  double best_primal = INFINITY;
  std::vector<double> best_x(n, 1.0);
  double best_dual = 0.0;
  std::vector<std::int64_t> best_routed(m, 0);
  std::int64_t best_routed_load = 1;

  GridCover out;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    out.iterations = it + 1;
    std::size_t shortest = 0;
    for (std::size_t s = 1; s < m; ++s) {
      if (edge_len[s] < edge_len[shortest]) shortest = s;
    }
    const double alpha = edge_len[shortest];
    if (alpha > 0 && total / alpha < best_primal) {
      best_primal = total / alpha;
      for (std::size_t v = 0; v < n; ++v) best_x[v] = length[v] / alpha;
    }

    ++routed[shortest];
    ++rounds;
    for (hs::Element e : sys.sets[shortest]) {
      max_load = std::max(max_load, ++load[e]);
      const double old = length[e];
      length[e] = old * (1.0 + step);
      total += length[e] - old;
      for (std::size_t s : incidence[e]) edge_len[s] += length[e] - old;
    }
    const double dual = static_cast<double>(rounds) / static_cast<double>(max_load);
    if (dual > best_dual) {
      best_dual = dual;
      best_routed = routed;
      best_routed_load = max_load;
    }
    if (best_primal <= (1.0 + eps) * best_dual * (1.0 - 1e-9)) {
      out.certified = true;
      break;
    }
    // Keep lengths in range; ratios are scale-free.
    if (total > 1e200) {
      for (double& l : length) l /= total;
      for (double& l : edge_len) l /= total;
      total = 1.0;
    }
  }

  // Snap the primal up to the grid, cap at 1, then rescale any edge that
  // still falls short so every covering constraint holds exactly.
  out.primal.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    out.primal[v] = std::min<std::int64_t>(
        kGrid, static_cast<std::int64_t>(std::ceil(best_x[v] * kGrid)));
  }
  std::int64_t min_sum = kGrid;
  for (const auto& s : sys.sets) {
    std::int64_t sum = 0;
    for (hs::Element e : s) sum += out.primal[e];
    min_sum = std::min(min_sum, sum);
  }
  if (min_sum < kGrid) {
    if (min_sum <= 0) {
      std::fill(out.primal.begin(), out.primal.end(), kGrid);
    } else {
      for (auto& w : out.primal) {
        w = std::min(kGrid, (w * kGrid + min_sum - 1) / min_sum);
      }
    }
  }

  // Snap the dual down; shrink if rounding pushed a vertex over capacity.
  out.dual.resize(m);
  for (std::size_t s = 0; s < m; ++s) {
    out.dual[s] = (best_routed[s] * kGrid) / best_routed_load;
  }
  std::vector<std::int64_t> cap(n, 0);
  std::int64_t max_cap = 0;
  for (std::size_t s = 0; s < m; ++s) {
    for (hs::Element e : sys.sets[s]) max_cap = std::max(max_cap, cap[e] += out.dual[s]);
  }
  if (max_cap > kGrid) {
    for (auto& y : out.dual) y = (y * kGrid) / max_cap;
  }
  return out;
}

}  // namespace

RepairSolution local_ratio_hitting_set(const ConflictHypergraph& hg) {
  IndexedHypergraph ix = index_hypergraph(hg);
  return to_solution(hg, ix, hs::take_whole_sets(ix.system), Method::kLocalRatio);
}

FractionalCover lp_fractional_cover(const ConflictHypergraph& hg,
                                    const Rational& eps,
                                    const LpOptions& options) {
  if (eps <= Rational(0)) throw std::invalid_argument("eps must be positive");
  FractionalCover cover;
  for (Tid v : hg.vertices()) cover.weights[v] = Rational(0);
  if (!hg.has_edges()) {
    cover.certified = true;
    return cover;
  }
  IndexedHypergraph ix = index_hypergraph(hg);
  GridCover grid = solve_covering_lp(ix.system, eps.to_double(),
                                     options.max_iterations);
  std::int64_t primal_sum = 0;
  for (std::size_t v = 0; v < grid.primal.size(); ++v) {
    cover.weights[ix.elements[v]] = Rational(grid.primal[v], kGrid);
    primal_sum += grid.primal[v];
  }
  std::int64_t dual_sum = 0;
  for (std::int64_t y : grid.dual) dual_sum += y;
  cover.objective = Rational(primal_sum, kGrid);
  cover.lower_bound = Rational(dual_sum, kGrid);
  cover.iterations = grid.iterations;
  cover.certified = cover.objective <= (Rational(1) + eps) * cover.lower_bound;
  return cover;
}

RepairSolution randomized_rounding_hitting_set(const ConflictHypergraph& hg,
                                               const Rational& eps,
                                               std::uint64_t seed,
                                               const RoundingOptions& options,
                                               RoundingTrace* trace) {
  FractionalCover lp = lp_fractional_cover(hg, eps, options.lp);
  IndexedHypergraph ix = index_hypergraph(hg);
  const std::int64_t d = static_cast<std::int64_t>(hg.rank());
  std::vector<std::int64_t> threshold(ix.elements.size());
  for (std::size_t v = 0; v < ix.elements.size(); ++v) {
    const Rational& w = lp.weights.at(ix.elements[v]);
    // w = k / kGrid exactly after reduction by a power of two.
    std::int64_t k = w.numerator() * (kGrid / w.denominator());
    threshold[v] = std::min(kGrid, d * k);
  }

  const std::size_t reps = std::max<std::size_t>(1, options.repetitions);
  hs::Set best;
  bool have_best = false;
  if (trace) trace->lp = lp;
  for (std::size_t r = 0; r < reps; ++r) {
    std::mt19937_64 rng(splitmix64(seed + 0x9E3779B97F4A7C15ull * r));
    std::vector<char> in(ix.elements.size(), 0);
    std::size_t drawn = 0;
    for (std::size_t v = 0; v < ix.elements.size(); ++v) {
      std::int64_t u = static_cast<std::int64_t>(rng() >> 44);  // 20 bits
      if (u < threshold[v]) {
        in[v] = 1;
        ++drawn;
      }
    }
    for (const auto& s : ix.system.sets) {
      if (std::none_of(s.begin(), s.end(), [&](hs::Element e) { return in[e]; })) {
        for (hs::Element e : s) in[e] = 1;
      }
    }
    hs::Set cover;
    for (std::size_t v = 0; v < in.size(); ++v) {
      if (in[v]) cover.push_back(static_cast<hs::Element>(v));
    }
    if (trace) {
      trace->drawn.push_back(drawn);
      trace->final_size.push_back(cover.size());
    }
    if (!have_best || cover.size() < best.size() ||
        (cover.size() == best.size() && cover < best)) {
      best = std::move(cover);
      have_best = true;
    }
  }
  return to_solution(hg, ix, best, Method::kRandomized);
}

}  // namespace incmeter
