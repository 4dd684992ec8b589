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

#include "pathlab/planting.hpp"

#include <algorithm>
#include <stdexcept>

namespace pathlab {

namespace {

bool config_less(const SpinConfig& a, const SpinConfig& b) {
  return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
}

}  // namespace

const SampleRecord& SampleSet::lowest() const {
  if (records.empty()) throw std::logic_error("empty sample set has no lowest record");
  return records.front();
}

void canonicalize(SampleSet& samples) {
  std::sort(samples.records.begin(), samples.records.end(),
            [](const SampleRecord& a, const SampleRecord& b) {
              if (a.energy != b.energy) return a.energy < b.energy;
              return config_less(a.config, b.config);
            });
  samples.shots = 0;
  for (const auto& r : samples.records) samples.shots += r.count;
}

SpinConfig PlantedModel::initial_state() const {
  if (!slack_index) return x0;
  SpinConfig x(x0.size() + 1);
  x.head(x0.size()) = x0;
  x(*slack_index) = 1;
  return x;
}

IsingModel planting_term(const SpinConfig& x0, double alpha1) {
  IsingModel term(static_cast<int>(x0.size()));
  term.check_config(x0);
  for (Eigen::Index i = 0; i < x0.size(); ++i) term.add_linear(static_cast<int>(i), -alpha1 * x0(i));
  return term;
}

PlantedModel plant(const IsingModel& model, const SpinConfig& x0, double alpha1, double alpha2) {
  if (x0.size() != model.num_variables()) {
    throw std::invalid_argument("planted configuration has length " + std::to_string(x0.size()) +
                                ", model has " + std::to_string(model.num_variables()) + " variables");
  }
  model.check_config(x0);
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0)) throw std::invalid_argument("scaling factors must be non-negative");

  auto [homogeneous, slack] = homogenize(model);
  // Without linear terms there is no slack variable to bias; alpha2 is dropped.

  PlantedModel planted{model, std::move(homogeneous), x0, alpha1, slack ? alpha2 : 0.0, slack};
  for (Eigen::Index i = 0; i < x0.size(); ++i) {
    if (alpha1 != 0.0) planted.model.add_linear(static_cast<int>(i), -alpha1 * x0(i));
  }
  if (slack && alpha2 != 0.0) planted.model.add_linear(*slack, -alpha2);
  return planted;
}

SampleSet filter_slack(const SampleSet& samples, const PlantedModel& planted) {
  const int n = planted.original.num_variables();
  SampleSet out;
  out.meta = samples.meta;
  for (const auto& r : samples.records) {
    if (planted.slack_index && r.config(*planted.slack_index) != 1) continue;
    SpinConfig x = r.config.head(n);
    out.records.push_back({x, r.count, planted.original.energy(x)});
  }
  canonicalize(out);
  return out;
}

}  // namespace pathlab
