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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pathlab/quadratic_model.hpp"

namespace pathlab {

struct SampleRecord {
  SpinConfig config;
  std::int64_t count = 0;
  double energy = 0.0;
};

/// Measured configurations with multiplicities. Records are kept sorted by
/// energy, then by configuration.
struct SampleSet {
  std::int64_t shots = 0;
  std::vector<SampleRecord> records;
  std::map<std::string, std::string> meta;

  bool empty() const { return records.empty(); }
  int num_variables() const { return records.empty() ? 0 : static_cast<int>(records.front().config.size()); }
  /// Lowest-energy record. Requires a non-empty set.
  const SampleRecord& lowest() const;
};

/// Sorts records by (energy, configuration) and recomputes `shots`.
void canonicalize(SampleSet& samples);

/// An Ising model biased towards a known configuration.
///
/// `model` is the homogenized input plus the planting field
/// -alpha1 * x0_i on every original variable and -alpha2 on the slack.
struct PlantedModel {
  IsingModel original;
  IsingModel model;
  SpinConfig x0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  std::optional<int> slack_index;

  /// x0, extended with z = +1 when a slack variable is present.
  SpinConfig initial_state() const;
};

/// Builds the planted model. When the input has no linear terms no slack is
/// introduced and `alpha2` is recorded as zero.
PlantedModel plant(const IsingModel& model, const SpinConfig& x0, double alpha1, double alpha2 = 0.0);

/// The planting field alone over the original variables: sum_i -alpha1 x0_i x_i.
IsingModel planting_term(const SpinConfig& x0, double alpha1);

/// Drops samples with z = -1, removes the slack coordinate and re-evaluates
/// energies against the unplanted model. May return an empty set.
SampleSet filter_slack(const SampleSet& samples, const PlantedModel& planted);

}  // namespace pathlab
