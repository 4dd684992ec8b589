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

// Experiment orchestration: instance sets, baselines, the improvement fitness,
// parameter tuning and method comparison.
//
// Seeding. One top-level seed S drives everything:
//   instance seeds   base_d + 2k (training), base_d + 2k + 1 (validation),
//                    base_d = derive_seed(S, {"instances", d}) for density index d
//   anneal seeds     derive_seed(S, {"anneal", instance seed})
//   optimizer seeds  derive_seed(S, {"tune", method, d})
// Training and validation seeds differ in parity, so the sets are disjoint.
// Baseline and method runs of one instance share the anneal seed.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pathlab/annealer.hpp"
#include "pathlab/bayesopt.hpp"
#include "pathlab/graph.hpp"
#include "pathlab/planting.hpp"
#include "pathlab/schedule.hpp"

namespace pathlab {

enum class Method { FA, RA, HG, RAHG };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

struct BayesSettings {
  int init_points = 100;
  int n_iter = 200;
  double noise = 0.01;
  double kappa = 2.576;
  int random_starts = 1000;
  int heatmap_resolution = 50;
};

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::MaxCut;
  int n = 12;
  std::vector<double> densities{0.5};
  int instances_per_density = 10;
  int validation_instances = 10;
  std::int64_t baseline_shots = 1000;
  double baseline_T = 1.0;
  /// Shots of every method run.
  std::int64_t shots = 1000;
  Method method = Method::HG;
  std::vector<Method> methods{Method::FA, Method::RA, Method::HG, Method::RAHG};
  Backend backend = Backend::StateVector;
  std::uint64_t seed = 0;
  /// Durations evaluated by the comparison.
  std::vector<double> anneal_T{1.0};
  /// Duration used while tuning.
  double tune_T = 1.0;
  BayesSettings bayes;
  std::optional<double> dt;
  Integrator integrator = Integrator::RK4;
  int classical_sweeps = 1000;
  int statevector_limit = 16;
  /// Planting strengths used until tuned values are available.
  double alpha1 = 0.5;
  double alpha2 = 0.5;
  /// Tune the planting strengths jointly with the HG schedule.
  bool tune_alphas = false;
  WeightRange edge_weights{-1.0, 1.0};
  WeightRange vertex_weights{0.001, 1.0};
  /// Worker threads for instance-level parallelism; 0 uses the hardware count.
  int threads = 0;

  /// Throws std::invalid_argument on non-positive counts or densities
  /// outside (0, 1].
  void validate() const;
  SimConfig sim(std::int64_t shot_count, std::uint64_t run_seed) const;
};

enum class Split { Training, Validation };
const char* to_string(Split s);

std::uint64_t instance_seed(std::uint64_t top_seed, int density_index, Split split, int k);
std::uint64_t anneal_seed(std::uint64_t top_seed, std::uint64_t instance_seed);

/// Instances of one density; graph weights follow the problem kind.
std::vector<ProblemInstance> make_instances(const ExperimentConfig& cfg, int density_index, Split split);

/// The unplanted Ising model of an instance. Clique QUBOs are converted with
/// the x = (s + 1) / 2 substitution.
IsingModel instance_model(const ProblemInstance& instance);

struct Objective {
  bool usable = false;
  double value = 0.0;
  /// Best configuration over the original variables.
  SpinConfig config;
};

/// Best objective over a sample set on the original variables: cut weight for
/// Max-Cut, clique weight over valid cliques for Max-Clique (spin +1 selects
/// a vertex). Unusable when no sample qualifies.
Objective best_objective(const ProblemInstance& instance, const SampleSet& samples);

using Sampler =
    std::function<SampleSet(const IsingModel&, const SchedulePlan&, const std::optional<SpinConfig>&, const SimConfig&)>;

/// Best-of forward anneal at baseline_T with baseline_shots shots. Unusable
/// (baseline undefined) when no valid clique was sampled.
Objective run_baseline(const ProblemInstance& instance, const ExperimentConfig& cfg, const Sampler& sampler = {});

/// Schedule and planting parameters of a method. RA uses the reparameterized
/// turning points t_a = T u1 and t_b = t_a + (T - t_a) u2.
struct MethodParams {
  double alpha1 = 0.5;
  double alpha2 = 0.5;
  double t_mid = 0.5;
  double g_mid = 2.5;
  double u1 = 0.25;
  double u2 = 2.0 / 3.0;
  double s_inv = 0.25;

  friend bool operator==(const MethodParams&, const MethodParams&) = default;
};

/// The untuned equidistant schedules with the configured planting strengths.
MethodParams fixed_params(const ExperimentConfig& cfg);

SchedulePlan method_plan(Method method, const MethodParams& params, double T,
                         const AnnealFunctions& functions = default_anneal_functions());

struct RunOutcome {
  Objective best;
  /// Fraction of shots with slack z = +1 (1 without a slack variable).
  double z_plus_fraction = 1.0;
  SampleSet samples;
};

/// One method run on one instance. HG and RA+HG anneal the planted model and
/// report results on the original variables after slack filtering.
RunOutcome run_method(const ProblemInstance& instance, Method method, const MethodParams& params, double T,
                      const SpinConfig& x0, const ExperimentConfig& cfg, const Sampler& sampler = {});

struct FitnessReport {
  double value = kSentinelFitness;
  /// Improvement per instance; NaN where the baseline is undefined.
  std::vector<double> improvements;
  std::vector<double> z_plus_fraction;
  /// Set when some run left no usable sample and the call returned the sentinel.
  bool sentinel = false;
  int excluded = 0;
};

/// Mean improvement of `method` over the baselines. Instances with an
/// undefined baseline are left out; a run without usable samples makes the
/// whole call return kSentinelFitness.
FitnessReport evaluate_fitness(Method method, const MethodParams& params, double T,
                               const std::vector<ProblemInstance>& instances, const std::vector<Objective>& baselines,
                               const ExperimentConfig& cfg, const Sampler& sampler = {});

double fitness(Method method, const MethodParams& params, double T, const std::vector<ProblemInstance>& instances,
               const std::vector<Objective>& baselines, const ExperimentConfig& cfg, const Sampler& sampler = {});

std::vector<Objective> run_baselines(const std::vector<ProblemInstance>& instances, const ExperimentConfig& cfg,
                                     const Sampler& sampler = {});

struct ScalingRow {
  double alpha1 = 0.0;
  double mean_improvement = 0.0;
};

/// HG fitness with the schedule of `params` fixed and alpha1 swept over
/// 0.01, 0.02, ..., 1.00.
std::vector<ScalingRow> tune_scaling_grid(const std::vector<ProblemInstance>& instances,
                                          const std::vector<Objective>& baselines, const MethodParams& params,
                                          double T, const ExperimentConfig& cfg, const Sampler& sampler = {});

enum class TuneScope { Schedule, ScheduleAndAlphas, Alphas };

SearchSpace method_space(Method method, ProblemKind problem, TuneScope scope);
MethodParams params_from_point(const SearchSpace& space, const Eigen::VectorXd& x, MethodParams base);
Eigen::VectorXd point_from_params(const SearchSpace& space, const MethodParams& params);

struct TuneResult {
  Method method = Method::HG;
  SearchSpace space;
  OptResult opt;
  MethodParams best;
  /// Mean z = +1 fraction of every fitness call, in call order.
  std::vector<double> z_plus_fraction;
  int sentinel_calls = 0;
};

/// Bayesian optimization of the method parameters in `scope`. The point of
/// `base` is the first probe, so the result is never worse than `base` on the
/// training set.
TuneResult tune_schedules(Method method, const std::vector<ProblemInstance>& instances,
                          const std::vector<Objective>& baselines, const MethodParams& base, TuneScope scope,
                          const ExperimentConfig& cfg, std::uint64_t seed, const Sampler& sampler = {});

struct ResultRow {
  Method method = Method::HG;
  double anneal_T = 1.0;
  double density = 0.5;
  double mean_improvement = 0.0;
  std::vector<double> values;
  std::map<std::string, std::string> meta;
};

/// Tuned parameters keyed by (problem, density, method).
class ParameterRegistry {
 public:
  static std::string key(ProblemKind problem, double density, Method method);
  std::optional<MethodParams> find(ProblemKind problem, double density, Method method) const;
  void set(ProblemKind problem, double density, Method method, const MethodParams& params);
  const std::map<std::string, MethodParams>& entries() const { return entries_; }
  std::map<std::string, MethodParams>& entries() { return entries_; }

 private:
  std::map<std::string, MethodParams> entries_;
};

/// Rows of one density: every method at every duration on the given
/// instances and their baselines.
std::vector<ResultRow> compare_density(const std::vector<Method>& methods, const std::vector<double>& T_candidates,
                                       const ExperimentConfig& cfg, const ParameterRegistry& registry, double density,
                                       const std::vector<ProblemInstance>& instances,
                                       const std::vector<Objective>& baselines, const Sampler& sampler = {});

/// Sorts by method, density, then duration.
void sort_rows(std::vector<ResultRow>& rows);

/// Evaluates every method at every duration and density on freshly generated
/// validation instances. Rows are sorted with sort_rows.
std::vector<ResultRow> run_comparison(const std::vector<Method>& methods, const std::vector<double>& T_candidates,
                                      const ExperimentConfig& cfg, const ParameterRegistry& registry,
                                      const Sampler& sampler = {});

/// Runs fn(0), ..., fn(count - 1) on up to `threads` workers (0 means the
/// hardware count). The first exception is rethrown after all workers stop.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace pathlab
