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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pathlab/gaussian_process.hpp"
#include "pathlab/random.hpp"

namespace pathlab {

/// Fitness reported for evaluations that fail or produce no usable result.
inline constexpr double kSentinelFitness = -1000.0;

struct Dimension {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
};

/// An axis-aligned box of named parameters.
class SearchSpace {
 public:
  SearchSpace() = default;
  /// Throws std::invalid_argument on lower >= upper or repeated names.
  explicit SearchSpace(std::vector<Dimension> dims);

  int size() const { return static_cast<int>(dims_.size()); }
  const std::vector<Dimension>& dims() const { return dims_; }
  const Dimension& operator[](int k) const { return dims_[k]; }
  int index_of(const std::string& name) const;

  Eigen::VectorXd lower() const;
  Eigen::VectorXd upper() const;
  Eigen::VectorXd widths() const { return upper() - lower(); }
  bool contains(const Eigen::VectorXd& x) const;
  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const;
  Eigen::VectorXd sample_uniform(Rng& rng) const;

 private:
  std::vector<Dimension> dims_;
};

struct Acquisition {
  enum class Kind { UCB, EI };
  Kind kind = Kind::UCB;
  /// UCB exploration weight.
  double kappa = 2.576;
  /// EI exploration offset.
  double xi = 0.0;

  static Acquisition ucb(double kappa = 2.576) { return {Kind::UCB, kappa, 0.0}; }
  static Acquisition ei(double xi = 0.0) { return {Kind::EI, 2.576, xi}; }
};

/// Expected improvement of N(mean, stddev^2) over `incumbent + xi`.
double expected_improvement(double mean, double stddev, double incumbent, double xi);

/// UCB: mean + kappa * stddev. EI: expected improvement over the best
/// observed target of the model.
double acquisition(const GPModel& model, const Eigen::VectorXd& point, const Acquisition& acq);

struct SuggestOptions {
  int random_starts = 1000;
  /// Best random starts that receive coordinate-wise refinement.
  int refine_top = 5;
};

/// Maximizes the acquisition over the box: random starts, then coordinate
/// search from the best few. Ties keep the first point found.
Eigen::VectorXd suggest_next(const GPModel& model, const SearchSpace& space, const Acquisition& acq, Rng& rng,
                             const SuggestOptions& options = {});

struct Heatmap {
  int dim_x = 0;
  int dim_y = 1;
  std::string name_x, name_y;
  Eigen::VectorXd xs, ys;
  /// mean(i, j) and variance(i, j) at (xs(i), ys(j)).
  Eigen::MatrixXd mean, variance;
};

/// Posterior mean and variance on a resolution x resolution grid over two
/// dimensions of the space; other coordinates are held at `anchor`.
Heatmap surrogate_grid(const GPModel& model, const SearchSpace& space, int resolution, int dim_x = 0,
                       int dim_y = 1, const std::optional<Eigen::VectorXd>& anchor = std::nullopt);

struct OptResult {
  Eigen::VectorXd best_point;
  double best_value = kSentinelFitness;
  std::vector<Observation> history;
  /// Calls that threw or returned a non-finite value.
  int failures = 0;
  std::optional<GPModel> surrogate;
  std::optional<Heatmap> heatmap;

  /// Running maximum of the history values.
  std::vector<double> best_so_far() const;
};

struct OptimizeOptions {
  int init_points = 100;
  int n_iter = 200;
  double noise = 0.01;
  std::uint64_t seed = 0;
  Acquisition acquisition = Acquisition::ucb();
  SuggestOptions suggest;
  /// Points evaluated first; they count towards init_points.
  std::vector<Eigen::VectorXd> probes;
  int gp_restarts = 3;
  int gp_max_evaluations = 150;
  /// Grid resolution of the exported surrogate for two-dimensional spaces;
  /// 0 disables the export.
  int heatmap_resolution = 0;
};

using Fitness = std::function<double(const Eigen::VectorXd&)>;

/// Sequential Bayesian optimization maximizing `fitness` over `space`:
/// init_points exploratory evaluations, then n_iter GP-guided ones. The
/// fitness is called exactly init_points + n_iter times; failures are
/// recorded as kSentinelFitness and the loop continues.
OptResult optimize(const Fitness& fitness, const SearchSpace& space, const OptimizeOptions& options);

}  // namespace pathlab
