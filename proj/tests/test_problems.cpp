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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pathlab/graph.hpp"

using namespace pathlab;

namespace {

WeightedGraph graph(int n, std::vector<Edge> edges, std::vector<double> vw = {}) {
  WeightedGraph g;
  g.n = n;
  g.edges = std::move(edges);
  g.vertex_weights = std::move(vw);
  return g;
}

SpinConfig bits(std::initializer_list<int> v) {
  SpinConfig x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (int s : v) x(i++) = s;
  return x;
}

}  // namespace

TEST(Generator, ZeroProbabilityHasNoEdges) {
  EXPECT_TRUE(gen_er_graph(10, 0.0, WeightRange{-1, 1}, std::nullopt, 1).edges.empty());
}

TEST(Generator, CompleteGraph) {
  const auto g = gen_er_graph(4, 1.0, std::nullopt, std::nullopt, 1);
  EXPECT_EQ(g.edges.size(), 6u);
  EXPECT_FALSE(g.edge_weighted);
}

TEST(Generator, EdgeCountMatchesBinomialStatistics) {
  const int n = 200;
  const double p = 0.3;
  const double pairs = n * (n - 1) / 2.0;
  double sum = 0.0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) sum += static_cast<double>(gen_er_graph(n, p, std::nullopt, std::nullopt, s).edges.size());
  const double mean = sum / seeds;
  const double sigma_of_mean = std::sqrt(pairs * p * (1 - p) / seeds);
  EXPECT_LT(std::abs(mean - p * pairs), 3 * sigma_of_mean);
}

TEST(Generator, WeightsInsideOpenRangesAndDeterministic) {
  const auto g = gen_er_graph(12, 0.5, WeightRange{-1, 1}, WeightRange{0.001, 1}, 42);
  for (const auto& e : g.edges) {
    EXPECT_GT(e.w, -1.0);
    EXPECT_LT(e.w, 1.0);
    EXPECT_LT(e.u, e.v);
  }
  ASSERT_EQ(g.vertex_weights.size(), 12u);
  for (double w : g.vertex_weights) {
    EXPECT_GT(w, 0.001);
    EXPECT_LT(w, 1.0);
  }
  EXPECT_EQ(g, gen_er_graph(12, 0.5, WeightRange{-1, 1}, WeightRange{0.001, 1}, 42));
  EXPECT_NE(g, gen_er_graph(12, 0.5, WeightRange{-1, 1}, WeightRange{0.001, 1}, 43));
}

TEST(Generator, RejectsBadArguments) {
  EXPECT_THROW(gen_er_graph(0, 0.5, std::nullopt, std::nullopt, 1), std::invalid_argument);
  EXPECT_THROW(gen_er_graph(5, 1.5, std::nullopt, std::nullopt, 1), std::invalid_argument);
  EXPECT_THROW(gen_er_graph(5, 0.5, WeightRange{1, 1}, std::nullopt, 1), std::invalid_argument);
}

TEST(MaxCut, Triangle) {
  const auto g = graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  const auto m = maxcut_ising(g);
  EXPECT_EQ(m.num_interactions(), 3u);
  EXPECT_EQ(m.quadratic(0, 2), 1.0);
  EXPECT_EQ(brute_force_solve(m).min_energy, -1.0);
}

TEST(MaxCut, SingleEdge) {
  const auto m = maxcut_ising(graph(2, {{0, 1, 0.8}}));
  const auto r = brute_force_solve(m);
  EXPECT_DOUBLE_EQ(r.min_energy, -0.8);
  for (const auto& x : r.minimizers) EXPECT_NE(x(0), x(1));
}

TEST(MaxCut, GroundStateCutEqualsExhaustiveMaxCut) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_er_graph(8, 0.5, WeightRange{-1, 1}, std::nullopt, seed);
    const auto r = brute_force_solve(maxcut_ising(g));
    const double oracle_cut = oracle::maxcut_exhaustive(g);
    for (const auto& x : r.minimizers) EXPECT_NEAR(cut_value(g, x), oracle_cut, 1e-12);
    EXPECT_NEAR(brute_force_maxcut(g), oracle_cut, 1e-12);
  }
}

TEST(CutValue, Basics) {
  const auto g = graph(2, {{0, 1, 0.7}});
  EXPECT_EQ(cut_value(g, bits({1, 1})), 0.0);
  EXPECT_EQ(cut_value(g, bits({1, -1})), 0.7);
}

TEST(CutValue, EnergyIdentity) {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto g = gen_er_graph(10, 0.4, WeightRange{-1, 1}, std::nullopt, seed);
    const auto m = maxcut_ising(g);
    const auto x = oracle::to_config(oracle::spins_of(10, rng() & 1023));
    EXPECT_NEAR(cut_value(g, x), (g.total_edge_weight() - m.energy(x)) / 2, 1e-12);
  }
}

TEST(MaxClique, CompleteTriangle) {
  const auto g = graph(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}, {0.5, 0.6, 0.7});
  const auto r = brute_force_solve(maxclique_qubo(g));
  EXPECT_NEAR(r.min_energy, -1.8, 1e-12);
  ASSERT_EQ(r.minimizers.size(), 1u);
  EXPECT_EQ(r.minimizers[0], bits({1, 1, 1}));
}

TEST(MaxClique, EmptyGraphSelectsOneVertex) {
  const auto g = graph(4, {}, {0.5, 0.5, 0.5, 0.5});
  const auto r = brute_force_solve(maxclique_qubo(g));
  EXPECT_DOUBLE_EQ(r.min_energy, -0.5);
  EXPECT_EQ(r.minimizers.size(), 4u);
  for (const auto& x : r.minimizers) EXPECT_EQ(x.sum(), 1);
}

TEST(MaxClique, QuboMinimizerIsMaximumWeightClique) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto g = gen_er_graph(10, 0.5, std::nullopt, WeightRange{0.001, 1}, seed);
    const auto r = brute_force_solve(maxclique_qubo(g));
    const double best = oracle::maxclique_exhaustive(g);
    EXPECT_NEAR(-r.min_energy, best, 1e-12);
    for (const auto& x : r.minimizers) {
      const auto c = clique_check(g, x);
      EXPECT_TRUE(c.is_clique);
      EXPECT_NEAR(c.weight, best, 1e-12);
    }
    EXPECT_NEAR(brute_force_maxclique(g).weight, best, 1e-12);
  }
}

TEST(MaxClique, RequiresPositiveVertexWeights) {
  EXPECT_THROW(maxclique_qubo(graph(2, {})), std::invalid_argument);
  EXPECT_THROW(maxclique_qubo(graph(2, {}, {0.5, 0.0})), std::invalid_argument);
}

TEST(CliqueCheck, EmptySubset) {
  const auto c = clique_check(graph(3, {{0, 1, 1}}, {1, 2, 3}), bits({0, 0, 0}));
  EXPECT_TRUE(c.is_clique);
  EXPECT_EQ(c.weight, 0.0);
}

TEST(CliqueCheck, NonAdjacentPair) {
  const auto c = clique_check(graph(3, {{0, 1, 1}}, {1, 2, 3}), bits({1, 0, 1}));
  EXPECT_FALSE(c.is_clique);
  EXPECT_EQ(c.weight, 4.0);
}

TEST(CliqueCheck, AgreesWithPairwiseTestOnAllSubsets) {
  const auto g = gen_er_graph(8, 0.5, std::nullopt, WeightRange{0.001, 1}, 17);
  std::vector<std::vector<bool>> adj(8, std::vector<bool>(8, false));
  for (const auto& e : g.edges) adj[e.u][e.v] = adj[e.v][e.u] = true;
  for (std::uint64_t k = 0; k < 256; ++k) {
    bool ok = true;
    double w = 0.0;
    for (int i = 0; i < 8; ++i) {
      if (!((k >> i) & 1)) continue;
      w += g.vertex_weights[i];
      for (int j = i + 1; j < 8; ++j) ok = ok && (!((k >> j) & 1) || adj[i][j]);
    }
    const auto c = clique_check(g, config_from_bits<Vartype::Binary>(8, k));
    EXPECT_EQ(c.is_clique, ok) << k;
    EXPECT_NEAR(c.weight, w, 1e-12);
  }
}

TEST(BruteForceClique, CompleteGraphTakesEverything) {
  const auto g = gen_er_graph(6, 1.0, std::nullopt, WeightRange{0.001, 1}, 5);
  const auto r = brute_force_maxclique(g);
  EXPECT_EQ(r.subset.sum(), 6);
  double total = 0.0;
  for (double w : g.vertex_weights) total += w;
  EXPECT_NEAR(r.weight, total, 1e-12);
}

TEST(BruteForceClique, StarGraphTakesCenterAndHeaviestLeaf) {
  const auto g = graph(5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}}, {0.2, 0.3, 0.9, 0.4, 0.1});
  const auto r = brute_force_maxclique(g);
  EXPECT_DOUBLE_EQ(r.weight, 1.1);
  EXPECT_EQ(r.subset, bits({1, 0, 1, 0, 0}));
  EXPECT_NEAR(oracle::maxclique_exhaustive(g), 1.1, 1e-12);
}

TEST(Graph, ValidateRejectsMalformedGraphs) {
  EXPECT_THROW(graph(2, {{0, 0, 1}}).validate(), std::invalid_argument);
  EXPECT_THROW(graph(2, {{0, 2, 1}}).validate(), std::invalid_argument);
  EXPECT_THROW(graph(3, {{0, 1, 1}, {1, 0, 1}}).validate(), std::invalid_argument);
  EXPECT_THROW(graph(2, {}, {1.0}).validate(), std::invalid_argument);
}
