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

#include "pathlab/gaussian_process.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "pathlab/nelder_mead.hpp"
#include "pathlab/random.hpp"

namespace pathlab {

double RbfKernel::operator()(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  return signal_variance * std::exp(-0.5 * ((x - y).array() / length_scales.array()).square().sum());
}

Eigen::MatrixXd RbfKernel::gram(const Eigen::MatrixXd& X) const {
  const Eigen::Index m = X.rows();
  const Eigen::MatrixXd Z = X.array().rowwise() / length_scales.transpose().array();
  const Eigen::VectorXd sq = Z.rowwise().squaredNorm();
  Eigen::MatrixXd d2 = (-2.0 * Z * Z.transpose()).colwise() + sq;
  d2.rowwise() += sq.transpose();
  Eigen::MatrixXd K = signal_variance * (-0.5 * d2.array().max(0.0)).exp().matrix();
  for (Eigen::Index i = 0; i < m; ++i) K(i, i) = signal_variance;
  return K;
}

Eigen::VectorXd RbfKernel::cross(const Eigen::MatrixXd& X, const Eigen::VectorXd& x) const {
  Eigen::VectorXd k(X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    k(i) = signal_variance * std::exp(-0.5 * ((X.row(i).transpose() - x).array() / length_scales.array()).square().sum());
  }
  return k;
}

namespace {

struct Factorization {
  Eigen::LLT<Eigen::MatrixXd> llt;
  double jitter = 0.0;
};

// Jitter escalates 1e-10 -> 1e-6 by decades when the plain factorization fails.
std::optional<Factorization> factorize(const Eigen::MatrixXd& K, double noise) {
  Eigen::MatrixXd A = K;
  A.diagonal().array() += noise;
  Factorization f{Eigen::LLT<Eigen::MatrixXd>(A), 0.0};
  if (f.llt.info() == Eigen::Success) return f;
  for (double jitter = 1e-10; jitter <= 1e-6 * 1.0001; jitter *= 10.0) {
    Eigen::MatrixXd B = A;
    B.diagonal().array() += jitter;
    f.llt.compute(B);
    f.jitter = jitter;
    if (f.llt.info() == Eigen::Success) return f;
  }
  return std::nullopt;
}

double log_likelihood(const Factorization& f, const Eigen::VectorXd& y, const Eigen::VectorXd& alpha) {
  const double log_det = 2.0 * f.llt.matrixLLT().diagonal().array().log().sum();
  return -0.5 * y.dot(alpha) - 0.5 * log_det - 0.5 * static_cast<double>(y.size()) * std::log(2.0 * std::numbers::pi);
}

}  // namespace

GPModel gp_condition(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, const RbfKernel& kernel, double noise) {
  if (X.rows() == 0 || X.rows() != y.size()) throw std::invalid_argument("GP needs matching, non-empty data");
  if (!(noise >= 0.0)) throw std::invalid_argument("GP noise must be non-negative");
  if (kernel.length_scales.size() != X.cols()) throw std::invalid_argument("kernel dimension mismatch");

  GPModel model;
  model.kernel_ = kernel;
  model.noise_ = noise;
  model.X_ = X;
  model.y_ = y;
  model.y_mean_ = y.mean();
  const double var = (y.array() - model.y_mean_).square().sum() / static_cast<double>(y.size());
  model.y_scale_ = var > 0.0 ? std::sqrt(var) : 1.0;
  const Eigen::VectorXd ys = (y.array() - model.y_mean_) / model.y_scale_;

  auto f = factorize(kernel.gram(X), noise);
  if (!f) throw std::runtime_error("GP kernel matrix is numerically singular after jitter escalation");
  model.jitter_ = f->jitter;
  model.alpha_ = f->llt.solve(ys);
  model.log_likelihood_ = log_likelihood(*f, ys, model.alpha_);
  model.chol_ = std::move(f->llt);
  return model;
}

GPModel gp_fit(const std::vector<Observation>& obs, const GpOptions& options) {
  if (obs.empty()) throw std::invalid_argument("GP fit needs at least one observation");
  if (!(options.noise >= 0.0)) throw std::invalid_argument("GP noise must be non-negative");
  const Eigen::Index d = obs.front().point.size();
  const Eigen::Index m = static_cast<Eigen::Index>(obs.size());
  Eigen::MatrixXd X(m, d);
  Eigen::VectorXd y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (obs[i].point.size() != d) throw std::invalid_argument("observations have mixed dimensions");
    if (!std::isfinite(obs[i].value)) throw std::invalid_argument("observation value is not finite");
    X.row(i) = obs[i].point.transpose();
    y(i) = obs[i].value;
  }
  const Eigen::VectorXd scale =
      options.input_scale.size() == d ? options.input_scale : Eigen::VectorXd::Ones(d).eval();

  RbfKernel initial{options.initial_length_scale * scale, 1.0};
  if (!options.optimize_hyperparameters) {
    RbfKernel k = options.fixed_kernel.length_scales.size() == d ? options.fixed_kernel : initial;
    return gp_condition(X, y, k, options.noise);
  }

  // Parameters: log length scales (relative to scale), then log signal variance.
  Eigen::VectorXd lo(d + 1), hi(d + 1);
  lo.head(d).setConstant(std::log(options.min_length_scale));
  hi.head(d).setConstant(std::log(options.max_length_scale));
  lo(d) = std::log(options.min_signal_variance);
  hi(d) = std::log(options.max_signal_variance);

  const double y_mean = y.mean();
  const double var = (y.array() - y_mean).square().sum() / static_cast<double>(m);
  const Eigen::VectorXd ys = (y.array() - y_mean) / (var > 0.0 ? std::sqrt(var) : 1.0);

  auto to_kernel = [&](const Eigen::VectorXd& theta) {
    Eigen::VectorXd clamped = theta.cwiseMax(lo).cwiseMin(hi);
    return RbfKernel{(clamped.head(d).array().exp() * scale.array()).matrix(), std::exp(clamped(d))};
  };
  auto objective = [&](const Eigen::VectorXd& theta) {
    const RbfKernel k = to_kernel(theta);
    auto f = factorize(k.gram(X), options.noise);
    if (!f) return std::numeric_limits<double>::infinity();
    return -log_likelihood(*f, ys, f->llt.solve(ys));
  };

  Rng rng(options.seed);
  Eigen::VectorXd start(d + 1);
  start.head(d).setConstant(std::log(options.initial_length_scale));
  start(d) = 0.0;
  Eigen::VectorXd best_theta = start;
  double best_value = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    if (r > 0) {
      for (Eigen::Index k = 0; k <= d; ++k) start(k) = uniform(rng, lo(k), hi(k));
    }
    auto result = nelder_mead(objective, start, lo, hi, options.max_evaluations);
    if (result.value < best_value) {
      best_value = result.value;
      best_theta = result.point;
    }
  }
  return gp_condition(X, y, to_kernel(best_theta), options.noise);
}

GpPrediction GPModel::predict(const Eigen::VectorXd& x) const {
  if (x.size() != X_.cols()) throw std::invalid_argument("prediction point has the wrong dimension");
  const Eigen::VectorXd k = kernel_.cross(X_, x);
  const double mean_s = k.dot(alpha_);
  const Eigen::VectorXd v = chol_.matrixL().solve(k);
  const double var_s = kernel_.signal_variance - v.squaredNorm();
  return {y_mean_ + y_scale_ * mean_s, y_scale_ * y_scale_ * std::max(var_s, 0.0), var_s < 0.0};
}

GpPrediction gp_predict(const GPModel& model, const Eigen::VectorXd& x) { return model.predict(x); }

}  // namespace pathlab
