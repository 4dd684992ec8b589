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

// JSON and CSV serialization. Malformed input raises std::invalid_argument;
// file-system failures raise std::runtime_error naming the path.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pathlab/bayesopt.hpp"
#include "pathlab/graph.hpp"
#include "pathlab/harness.hpp"
#include "pathlab/planting.hpp"
#include "pathlab/quadratic_model.hpp"
#include "pathlab/schedule.hpp"

namespace pathlab {

using json = nlohmann::json;

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

json to_json(const WeightedGraph& g);
WeightedGraph graph_from_json(const json& j);

json to_json(const IsingModel& m);
json to_json(const QuboModel& m);
IsingModel ising_from_json(const json& j);
QuboModel qubo_from_json(const json& j);

/// {"T", "anneal": [[t, s]...], "hgain": [[t, g]...] | null, "reinitialize"}.
json to_json(const SchedulePlan& plan);
SchedulePlan schedule_from_json(const json& j, const AnnealFunctions& functions = default_anneal_functions());

json to_json(const SampleSet& s);
SampleSet samples_from_json(const json& j);

json to_json(const OptResult& r, const SearchSpace& space);
json to_json(const Heatmap& h);
Heatmap heatmap_from_json(const json& j);

/// The parts of a stored optimizer result needed for plotting.
struct OptHistory {
  SearchSpace space;
  std::vector<Observation> history;
  std::optional<Heatmap> heatmap;
};
OptHistory opt_history_from_json(const json& j);

json to_json(const MethodParams& p);
MethodParams params_from_json(const json& j);
json to_json(const ParameterRegistry& r);
ParameterRegistry registry_from_json(const json& j);

json to_json(const Objective& o);
Objective objective_from_json(const json& j);

json to_json(const ResultRow& row);
ResultRow result_row_from_json(const json& j);

json to_json(const ExperimentConfig& cfg);
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig config_from_json(const json& j);

/// "method,T,density,mean_improvement".
std::string table_csv(const std::vector<ResultRow>& rows);
/// "x,y,mean,variance", one line per grid point.
std::string heatmap_csv(const Heatmap& h);
/// "alpha1,mean_improvement".
std::string scaling_csv(const std::vector<ScalingRow>& rows);
/// Evaluation history: one column per dimension, then "value".
std::string history_csv(const OptResult& r, const SearchSpace& space);

std::string read_text(const std::string& path);
/// Creates parent directories as needed.
void write_text(const std::string& path, const std::string& content);
json read_json(const std::string& path);
/// Two-space indented JSON with a trailing newline.
void write_json(const std::string& path, const json& j);

}  // namespace pathlab
