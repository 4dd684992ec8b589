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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pathlab/quadratic_model.hpp"

namespace pathlab {

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected graph with optional edge and vertex weights.
///
/// Unweighted edges carry w = 1 and `edge_weighted` is false. An empty
/// `vertex_weights` means the graph has no vertex weights.
struct WeightedGraph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<double> vertex_weights;
  bool edge_weighted = true;

  bool has_vertex_weights() const { return !vertex_weights.empty(); }
  /// Dense adjacency, true on edges only.
  std::vector<std::vector<bool>> adjacency() const;
  double total_edge_weight() const;
  /// Throws std::invalid_argument on self-loops, duplicates, bad indices or a
  /// vertex-weight vector of the wrong length.
  void validate() const;

  friend bool operator==(const WeightedGraph&, const WeightedGraph&) = default;
};

/// An open interval (lo, hi) for weight sampling.
struct WeightRange {
  double lo = 0.0;
  double hi = 1.0;
};

enum class ProblemKind { MaxCut, MaxClique };

const char* to_string(ProblemKind k);
ProblemKind problem_kind_from_string(const std::string& s);

struct ProblemInstance {
  WeightedGraph graph;
  ProblemKind kind = ProblemKind::MaxCut;
  double density = 0.0;
  std::uint64_t seed = 0;
};

/// Erdős–Rényi G(n, p). Weights are i.i.d. uniform on the open ranges;
/// endpoint draws are rejected. Deterministic in `seed`.
WeightedGraph gen_er_graph(int n, double p, std::optional<WeightRange> edge_w,
                           std::optional<WeightRange> vertex_w, std::uint64_t seed);

/// J_ij = w(i, j) on every edge; no fields, zero offset.
IsingModel maxcut_ising(const WeightedGraph& g);

/// Weight of the edges whose endpoints take different spins.
double cut_value(const WeightedGraph& g, const SpinConfig& spins);

/// -sum_i w(i) x_i + sum over non-adjacent pairs of 2 max(w(i), w(j)) x_i x_j.
QuboModel maxclique_qubo(const WeightedGraph& g);

struct CliqueCheck {
  bool is_clique = false;
  double weight = 0.0;
};

/// Validity of a {0,1} vertex selection and its weight (reported either way).
CliqueCheck clique_check(const WeightedGraph& g, const SpinConfig& subset);

struct CliqueSolution {
  double weight = 0.0;
  SpinConfig subset;
};

/// Exact maximum-weight clique by branch-and-bound over vertex subsets.
CliqueSolution brute_force_maxclique(const WeightedGraph& g, int limit = kDefaultExhaustiveLimit);

/// Maximum cut weight by enumerating the 2^(n-1) partitions with vertex
/// n-1 fixed on one side.
double brute_force_maxcut(const WeightedGraph& g, int limit = kDefaultExhaustiveLimit);

}  // namespace pathlab
