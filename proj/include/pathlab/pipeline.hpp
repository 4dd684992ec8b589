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

// File-based experiment stages. Each stage reads what earlier stages wrote
// under one output directory:
//
//   config.json                      effective configuration (gen)
//   instances/manifest.json          instance seeds and files (gen)
//   instances/<split>/p<density>/graph_<k>.json
//   baselines.json                   best-of baselines, both splits (baseline)
//   scaling/scaling_p<density>.csv   alpha1 sweep (tune-scaling)
//   tune/<method>_p<density>.json    optimizer history and surrogate (tune-schedule)
//   registry.json                    tuned parameters (tune-*)
//   results.json, table.csv          comparison rows (compare)
//   export/                          plots and per-method schedules (export)

#pragma once

#include <string>
#include <vector>

#include "pathlab/harness.hpp"

namespace pathlab {

std::string density_tag(double p);

void stage_gen(const ExperimentConfig& cfg, const std::string& out);
void stage_baseline(const ExperimentConfig& cfg, const std::string& out);
void stage_tune_scaling(const ExperimentConfig& cfg, const std::string& out);
void stage_tune_schedule(const ExperimentConfig& cfg, const std::string& out);
void stage_compare(const ExperimentConfig& cfg, const std::string& out);
void stage_export(const ExperimentConfig& cfg, const std::string& out);

/// Instances of one density and split as written by stage_gen.
std::vector<ProblemInstance> load_instances(const ExperimentConfig& cfg, const std::string& out, int density_index,
                                            Split split);
std::vector<Objective> load_baselines(const std::string& out, double density, Split split);
ParameterRegistry load_registry(const std::string& out);

}  // namespace pathlab
