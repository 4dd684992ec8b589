// Copyright 2026 The pathlab Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "pathlab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

#include "pathlab/random.hpp"

namespace pathlab {

const char* to_string(ProblemKind k) { return k == ProblemKind::MaxCut ? "maxcut" : "maxclique"; }

ProblemKind problem_kind_from_string(const std::string& s) {
  if (s == "maxcut") return ProblemKind::MaxCut;
  if (s == "maxclique") return ProblemKind::MaxClique;
  throw std::invalid_argument("unknown problem kind '" + s + "'");
}

std::vector<std::vector<bool>> WeightedGraph::adjacency() const {
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : edges) adj[e.u][e.v] = adj[e.v][e.u] = true;
  return adj;
}

double WeightedGraph::total_edge_weight() const {
  double total = 0.0;
  for (const auto& e : edges) total += e.w;
  return total;
}

void WeightedGraph::validate() const {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.u == e.v) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.u));
    if (!std::isfinite(e.w)) throw std::invalid_argument("non-finite edge weight");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) {
      throw std::invalid_argument("duplicate edge (" + std::to_string(key.first) + ", " +
                                  std::to_string(key.second) + ")");
    }
  }
  if (!vertex_weights.empty() && static_cast<int>(vertex_weights.size()) != n) {
    throw std::invalid_argument("vertex weight vector has the wrong length");
  }
}

namespace {

void check_range(const WeightRange& r) {
  if (!(r.lo < r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw std::invalid_argument("degenerate weight range");
  }
}

double open_uniform(Rng& rng, const WeightRange& r) {
  for (;;) {
    double x = uniform(rng, r.lo, r.hi);
    if (x > r.lo && x < r.hi) return x;
  }
}

}  // namespace

WeightedGraph gen_er_graph(int n, double p, std::optional<WeightRange> edge_w,
                           std::optional<WeightRange> vertex_w, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("graph needs at least one vertex");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0, 1]");
  if (edge_w) check_range(*edge_w);
  if (vertex_w) check_range(*vertex_w);

  Rng rng(seed);
  WeightedGraph g;
  g.n = n;
  g.edge_weighted = edge_w.has_value();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (canonical(rng) < p) g.edges.push_back({u, v, edge_w ? open_uniform(rng, *edge_w) : 1.0});
    }
  }
  if (vertex_w) {
    g.vertex_weights.reserve(n);
    for (int v = 0; v < n; ++v) g.vertex_weights.push_back(open_uniform(rng, *vertex_w));
  }
  return g;
}

IsingModel maxcut_ising(const WeightedGraph& g) {
  g.validate();
  if (!g.edge_weighted) throw std::invalid_argument("max-cut requires edge weights");
  IsingModel m(g.n);
  for (const auto& e : g.edges) m.add_quadratic(e.u, e.v, e.w);
  return m;
}

double cut_value(const WeightedGraph& g, const SpinConfig& spins) {
  if (spins.size() != g.n) throw std::invalid_argument("spin configuration length does not match the graph");
  double cut = 0.0;
  for (const auto& e : g.edges)
    if (spins(e.u) != spins(e.v)) cut += e.w;
  return cut;
}

QuboModel maxclique_qubo(const WeightedGraph& g) {
  g.validate();
  if (!g.has_vertex_weights()) throw std::invalid_argument("max-clique requires vertex weights");
  for (double w : g.vertex_weights)
    if (!(w > 0.0)) throw std::invalid_argument("max-clique vertex weights must be strictly positive");

  const auto adj = g.adjacency();
  QuboModel q(g.n);
  for (int i = 0; i < g.n; ++i) q.add_linear(i, -g.vertex_weights[i]);
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (!adj[i][j]) q.add_quadratic(i, j, 2.0 * std::max(g.vertex_weights[i], g.vertex_weights[j]));
    }
  }
  return q;
}

CliqueCheck clique_check(const WeightedGraph& g, const SpinConfig& subset) {
  if (subset.size() != g.n) throw std::invalid_argument("subset length does not match the graph");
  const auto adj = g.adjacency();
  CliqueCheck result{true, 0.0};
  for (int i = 0; i < g.n; ++i) {
    if (subset(i) != 1) continue;
    if (g.has_vertex_weights()) result.weight += g.vertex_weights[i];
    for (int j = i + 1; j < g.n; ++j)
      if (subset(j) == 1 && !adj[i][j]) result.is_clique = false;
  }
  return result;
}

namespace {

struct CliqueSearch {
  const std::vector<std::uint64_t>& neighbors;
  const std::vector<double>& weights;
  double best = 0.0;
  std::uint64_t best_set = 0;

  // candidates: vertices adjacent to everything in `chosen`.
  void run(std::uint64_t chosen, double weight, std::uint64_t candidates) {
    if (weight > best) {
      best = weight;
      best_set = chosen;
    }
    double bound = weight;
    for (std::uint64_t c = candidates; c; c &= c - 1) bound += weights[std::countr_zero(c)];
    if (bound <= best) return;
    while (candidates) {
      int v = std::countr_zero(candidates);
      candidates &= candidates - 1;
      run(chosen | (std::uint64_t{1} << v), weight + weights[v], candidates & neighbors[v]);
      double rest = weight;
      for (std::uint64_t c = candidates; c; c &= c - 1) rest += weights[std::countr_zero(c)];
      if (rest <= best) return;
    }
  }
};

}  // namespace

CliqueSolution brute_force_maxclique(const WeightedGraph& g, int limit) {
  g.validate();
  if (g.n > limit || g.n > 63) {
    throw std::invalid_argument("exhaustive clique search over " + std::to_string(g.n) +
                                " vertices exceeds limit " + std::to_string(limit));
  }
  std::vector<double> weights = g.has_vertex_weights() ? g.vertex_weights : std::vector<double>(g.n, 1.0);
  std::vector<std::uint64_t> neighbors(g.n, 0);
  for (const auto& e : g.edges) {
    neighbors[e.u] |= std::uint64_t{1} << e.v;
    neighbors[e.v] |= std::uint64_t{1} << e.u;
  }
  CliqueSearch search{neighbors, weights};
  const std::uint64_t all = g.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.n) - 1;
  search.run(0, 0.0, all);
  return {search.best, config_from_bits<Vartype::Binary>(g.n, search.best_set)};
}

double brute_force_maxcut(const WeightedGraph& g, int limit) {
  g.validate();
  if (g.n > limit) {
    throw std::invalid_argument("exhaustive cut search over " + std::to_string(g.n) +
                                " vertices exceeds limit " + std::to_string(limit));
  }
  if (g.n <= 1) return 0.0;
  double best = -std::numeric_limits<double>::infinity();
  const std::uint64_t partitions = std::uint64_t{1} << (g.n - 1);
  for (std::uint64_t side = 0; side < partitions; ++side) {
    double cut = 0.0;
    for (const auto& e : g.edges)
      if (((side >> e.u) & 1u) != ((side >> e.v) & 1u)) cut += e.w;
    best = std::max(best, cut);
  }
  return best;
}

}  // namespace pathlab
