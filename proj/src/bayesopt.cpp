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

#include "pathlab/bayesopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

namespace pathlab {

SearchSpace::SearchSpace(std::vector<Dimension> dims) : dims_(std::move(dims)) {
  std::set<std::string> names;
  for (const auto& d : dims_) {
    if (!(std::isfinite(d.lower) && std::isfinite(d.upper) && d.lower < d.upper)) {
      throw std::invalid_argument("dimension '" + d.name + "' needs finite bounds with lower < upper");
    }
    if (!names.insert(d.name).second) throw std::invalid_argument("dimension '" + d.name + "' is repeated");
  }
}

int SearchSpace::index_of(const std::string& name) const {
  for (int k = 0; k < size(); ++k) {
    if (dims_[k].name == name) return k;
  }
  return -1;
}

Eigen::VectorXd SearchSpace::lower() const {
  Eigen::VectorXd v(size());
  for (int k = 0; k < size(); ++k) v(k) = dims_[k].lower;
  return v;
}

Eigen::VectorXd SearchSpace::upper() const {
  Eigen::VectorXd v(size());
  for (int k = 0; k < size(); ++k) v(k) = dims_[k].upper;
  return v;
}

bool SearchSpace::contains(const Eigen::VectorXd& x) const {
  if (x.size() != size()) return false;
  for (int k = 0; k < size(); ++k) {
    if (!(x(k) >= dims_[k].lower && x(k) <= dims_[k].upper)) return false;
  }
  return true;
}

Eigen::VectorXd SearchSpace::clamp(const Eigen::VectorXd& x) const {
  if (x.size() != size()) throw std::invalid_argument("point has the wrong dimension");
  return x.cwiseMax(lower()).cwiseMin(upper());
}

Eigen::VectorXd SearchSpace::sample_uniform(Rng& rng) const {
  Eigen::VectorXd x(size());
  for (int k = 0; k < size(); ++k) x(k) = uniform(rng, dims_[k].lower, dims_[k].upper);
  return x;
}

double expected_improvement(double mean, double stddev, double incumbent, double xi) {
  const double diff = mean - incumbent - xi;
  if (!(stddev > 0.0)) return std::max(diff, 0.0);
  const double z = diff / stddev;
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
  const double cdf = 0.5 * std::erfc(-z / std::numbers::sqrt2);
  return diff * cdf + stddev * pdf;
}

double acquisition(const GPModel& model, const Eigen::VectorXd& point, const Acquisition& acq) {
  const GpPrediction p = model.predict(point);
  const double sd = std::sqrt(p.variance);
  if (acq.kind == Acquisition::Kind::UCB) return p.mean + acq.kappa * sd;
  return expected_improvement(p.mean, sd, model.targets().maxCoeff(), acq.xi);
}

Eigen::VectorXd suggest_next(const GPModel& model, const SearchSpace& space, const Acquisition& acq, Rng& rng,
                             const SuggestOptions& options) {
  if (space.size() == 0) throw std::invalid_argument("empty search space");
  if (model.dimension() != space.size()) throw std::invalid_argument("model and search space dimensions differ");
  const int starts = std::max(1, options.random_starts);

  std::vector<std::pair<double, Eigen::VectorXd>> candidates;
  candidates.reserve(starts);
  for (int r = 0; r < starts; ++r) {
    Eigen::VectorXd x = space.sample_uniform(rng);
    candidates.emplace_back(acquisition(model, x, acq), std::move(x));
  }
  // Stable: among equal values the earlier draw stays first.
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  const Eigen::VectorXd width = space.widths();
  Eigen::VectorXd best = candidates.front().second;
  double best_value = candidates.front().first;
  const int top = std::clamp(options.refine_top, 0, starts);
  for (int c = 0; c < top; ++c) {
    Eigen::VectorXd x = candidates[c].second;
    double fx = candidates[c].first;
    double step = 0.1;
    while (step >= 1e-4) {
      bool moved = false;
      for (int k = 0; k < space.size(); ++k) {
        for (double sign : {1.0, -1.0}) {
          Eigen::VectorXd y = x;
          y(k) = std::clamp(y(k) + sign * step * width(k), space[k].lower, space[k].upper);
          if (y(k) == x(k)) continue;
          const double fy = acquisition(model, y, acq);
          if (fy > fx) {
            x = std::move(y);
            fx = fy;
            moved = true;
            break;
          }
        }
      }
      if (!moved) step *= 0.5;
    }
    if (fx > best_value) {
      best_value = fx;
      best = x;
    }
  }
  return best;
}

Heatmap surrogate_grid(const GPModel& model, const SearchSpace& space, int resolution, int dim_x, int dim_y,
                       const std::optional<Eigen::VectorXd>& anchor) {
  if (resolution < 2) throw std::invalid_argument("heatmap resolution must be at least 2");
  if (dim_x == dim_y || dim_x < 0 || dim_y < 0 || dim_x >= space.size() || dim_y >= space.size()) {
    throw std::invalid_argument("heatmap needs two distinct dimensions of the space");
  }
  if (model.dimension() != space.size()) throw std::invalid_argument("model and search space dimensions differ");
  Eigen::VectorXd base = anchor ? *anchor : Eigen::VectorXd(0.5 * (space.lower() + space.upper()));
  if (base.size() != space.size()) throw std::invalid_argument("heatmap anchor has the wrong dimension");

  Heatmap h;
  h.dim_x = dim_x;
  h.dim_y = dim_y;
  h.name_x = space[dim_x].name;
  h.name_y = space[dim_y].name;
  h.xs = Eigen::VectorXd::LinSpaced(resolution, space[dim_x].lower, space[dim_x].upper);
  h.ys = Eigen::VectorXd::LinSpaced(resolution, space[dim_y].lower, space[dim_y].upper);
  h.mean.resize(resolution, resolution);
  h.variance.resize(resolution, resolution);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      Eigen::VectorXd x = base;
      x(dim_x) = h.xs(i);
      x(dim_y) = h.ys(j);
      const GpPrediction p = model.predict(x);
      h.mean(i, j) = p.mean;
      h.variance(i, j) = p.variance;
    }
  }
  return h;
}

std::vector<double> OptResult::best_so_far() const {
  std::vector<double> out;
  out.reserve(history.size());
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& o : history) {
    best = std::max(best, o.value);
    out.push_back(best);
  }
  return out;
}

namespace {

GpOptions surrogate_options(const SearchSpace& space, const OptimizeOptions& options, std::uint64_t seed) {
  GpOptions gp;
  gp.noise = options.noise;
  gp.restarts = options.gp_restarts;
  gp.max_evaluations = options.gp_max_evaluations;
  gp.seed = seed;
  gp.input_scale = space.widths();
  return gp;
}

}  // namespace

OptResult optimize(const Fitness& fitness, const SearchSpace& space, const OptimizeOptions& options) {
  if (space.size() == 0) throw std::invalid_argument("empty search space");
  if (options.init_points < 1) throw std::invalid_argument("init_points must be at least 1");
  if (options.n_iter < 0) throw std::invalid_argument("n_iter must be non-negative");
  if (static_cast<int>(options.probes.size()) > options.init_points) {
    throw std::invalid_argument("more probes than init_points");
  }
  for (const auto& p : options.probes) {
    if (!space.contains(p)) throw std::invalid_argument("probe point lies outside the search space");
  }
  if (!(options.noise >= 0.0)) throw std::invalid_argument("GP noise must be non-negative");

  OptResult result;
  auto record = [&](const Eigen::VectorXd& x) {
    double v = kSentinelFitness;
    bool failed = false;
    try {
      v = fitness(x);
    } catch (const std::exception&) {
      failed = true;
    }
    if (failed || !std::isfinite(v)) {
      ++result.failures;
      v = kSentinelFitness;
    }
    result.history.push_back({x, v});
    if (result.history.size() == 1 || v > result.best_value) {
      result.best_value = v;
      result.best_point = x;
    }
  };

  Rng init_rng(derive_seed(options.seed, {label_hash("bo-init")}));
  for (const auto& p : options.probes) record(p);
  for (int k = static_cast<int>(options.probes.size()); k < options.init_points; ++k) {
    record(space.sample_uniform(init_rng));
  }

  Rng suggest_rng(derive_seed(options.seed, {label_hash("bo-suggest")}));
  for (int it = 0; it < options.n_iter; ++it) {
    Eigen::VectorXd next;
    try {
      const GPModel gp =
          gp_fit(result.history, surrogate_options(space, options, derive_seed(options.seed, {label_hash("bo-gp"),
                                                                                             static_cast<std::uint64_t>(it)})));
      next = suggest_next(gp, space, options.acquisition, suggest_rng, options.suggest);
    } catch (const std::runtime_error&) {
      // Singular kernel even after jitter: fall back to an exploratory draw.
      next = space.sample_uniform(suggest_rng);
    }
    record(next);
  }

  try {
    result.surrogate =
        gp_fit(result.history, surrogate_options(space, options, derive_seed(options.seed, {label_hash("bo-final")})));
    if (options.heatmap_resolution > 0 && space.size() >= 2) {
      result.heatmap = surrogate_grid(*result.surrogate, space, options.heatmap_resolution, 0, 1, result.best_point);
    }
  } catch (const std::runtime_error&) {
    result.surrogate.reset();
  }
  return result;
}

}  // namespace pathlab
