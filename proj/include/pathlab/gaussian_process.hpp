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
#include <vector>

#include <Eigen/Dense>

namespace pathlab {

struct Observation {
  Eigen::VectorXd point;
  double value = 0.0;
};

/// Squared-exponential kernel with one length scale per input dimension:
/// k(x, y) = sigma_f^2 exp(-1/2 sum_d ((x_d - y_d) / l_d)^2).
struct RbfKernel {
  Eigen::VectorXd length_scales;
  double signal_variance = 1.0;

  double operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  Eigen::MatrixXd gram(const Eigen::MatrixXd& X) const;
  Eigen::VectorXd cross(const Eigen::MatrixXd& X, const Eigen::VectorXd& x) const;
};

struct GpOptions {
  /// Noise added to the kernel diagonal, in standardized target units.
  double noise = 0.01;
  bool optimize_hyperparameters = true;
  int restarts = 4;
  int max_evaluations = 200;
  std::uint64_t seed = 0;
  /// Per-dimension input scale (typically the search box widths). Length-scale
  /// bounds and the initial guess are multiples of it. Empty means ones.
  Eigen::VectorXd input_scale;
  double min_length_scale = 1e-2;
  double max_length_scale = 3.0;
  double initial_length_scale = 0.2;
  double min_signal_variance = 1e-2;
  double max_signal_variance = 1e2;
  /// Kernel used when hyperparameter optimization is off. Empty length scales
  /// fall back to the initial guess.
  RbfKernel fixed_kernel;
};

struct GpPrediction {
  double mean = 0.0;
  double variance = 0.0;
  /// Set when rounding produced a negative variance that was clamped to 0.
  bool variance_clamped = false;
};

/// Gaussian-process regression posterior. Targets are standardized
/// internally (zero prior mean in standardized units) and predictions are
/// returned in the original units. Immutable after fitting.
class GPModel {
 public:
  const RbfKernel& kernel() const { return kernel_; }
  double noise() const { return noise_; }
  /// Diagonal jitter that was needed on top of `noise` for a stable factorization.
  double jitter() const { return jitter_; }
  const Eigen::MatrixXd& inputs() const { return X_; }
  const Eigen::VectorXd& targets() const { return y_; }
  double target_mean() const { return y_mean_; }
  double target_scale() const { return y_scale_; }
  int dimension() const { return static_cast<int>(X_.cols()); }
  /// log p(y | X) of the standardized targets.
  double log_marginal_likelihood() const { return log_likelihood_; }
  GpPrediction predict(const Eigen::VectorXd& x) const;

 private:
  friend GPModel gp_fit(const std::vector<Observation>&, const GpOptions&);
  friend GPModel gp_condition(const Eigen::MatrixXd&, const Eigen::VectorXd&, const RbfKernel&, double);

  RbfKernel kernel_;
  double noise_ = 0.0;
  double jitter_ = 0.0;
  Eigen::MatrixXd X_;
  Eigen::VectorXd y_;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  Eigen::LLT<Eigen::MatrixXd> chol_;
  Eigen::VectorXd alpha_;
  double log_likelihood_ = 0.0;
};

/// Fits hyperparameters by maximizing the marginal likelihood with a bounded
/// multi-start Nelder-Mead search in log space, then caches the Cholesky
/// factorization. Throws std::runtime_error when the kernel matrix stays
/// singular after jitter escalation to 1e-6.
GPModel gp_fit(const std::vector<Observation>& obs, const GpOptions& options = {});

/// Posterior for fixed hyperparameters.
GPModel gp_condition(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const RbfKernel& kernel, double noise);

GpPrediction gp_predict(const GPModel& model, const Eigen::VectorXd& x);

}  // namespace pathlab
