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

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace pathlab {

struct MinimizeResult {
  Eigen::VectorXd point;
  double value;
  int evaluations;
};

/// Box-bounded Nelder-Mead minimization. Trial points are projected onto
/// [lo, hi] before evaluation.
template <class F>
MinimizeResult nelder_mead(F&& f, const Eigen::VectorXd& start, const Eigen::VectorXd& lo, const Eigen::VectorXd& hi,
                           int max_evaluations, double ftol = 1e-8) {
  const Eigen::Index d = start.size();
  auto project = [&](const Eigen::VectorXd& x) { return x.cwiseMax(lo).cwiseMin(hi).eval(); };

  std::vector<Eigen::VectorXd> simplex;
  std::vector<double> values;
  int evals = 0;
  auto eval = [&](const Eigen::VectorXd& x) {
    ++evals;
    return f(x);
  };
  simplex.push_back(project(start));
  values.push_back(eval(simplex.back()));
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::VectorXd x = simplex.front();
    const double step = 0.1 * (hi(k) - lo(k));
    x(k) = x(k) + step <= hi(k) ? x(k) + step : x(k) - step;
    simplex.push_back(project(x));
    values.push_back(eval(simplex.back()));
  }

  std::vector<int> order(d + 1);
  while (evals < max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
    const int best = order.front(), worst = order.back(), second = order[d - 1 >= 0 ? d - 1 : 0];
    if (std::abs(values[worst] - values[best]) <= ftol * (1.0 + std::abs(values[best]))) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(d);
    for (int i : order)
      if (i != worst) centroid += simplex[i];
    centroid /= static_cast<double>(d);

    const Eigen::VectorXd reflected = project(centroid + (centroid - simplex[worst]));
    const double fr = eval(reflected);
    if (fr < values[best]) {
      const Eigen::VectorXd expanded = project(centroid + 2.0 * (centroid - simplex[worst]));
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[worst] = expanded;
        values[worst] = fe;
      } else {
        simplex[worst] = reflected;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second]) {
      simplex[worst] = reflected;
      values[worst] = fr;
      continue;
    }
    const Eigen::VectorXd contracted = project(centroid + 0.5 * (simplex[worst] - centroid));
    const double fc = eval(contracted);
    if (fc < values[worst]) {
      simplex[worst] = contracted;
      values[worst] = fc;
      continue;
    }
    for (int i : order) {
      if (i == best) continue;
      simplex[i] = project(simplex[best] + 0.5 * (simplex[i] - simplex[best]));
      values[i] = eval(simplex[i]);
    }
  }
  const auto it = std::min_element(values.begin(), values.end());
  return {simplex[it - values.begin()], *it, evals};
}

}  // namespace pathlab
