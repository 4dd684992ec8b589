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

#include "pathlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <iterator>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "pathlab/io.hpp"
#include "pathlab/random.hpp"

namespace pathlab {

const char* to_string(Method m) {
  switch (m) {
    case Method::FA:
      return "FA";
    case Method::RA:
      return "RA";
    case Method::HG:
      return "HG";
    case Method::RAHG:
      return "RA+HG";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "FA") return Method::FA;
  if (s == "RA") return Method::RA;
  if (s == "HG") return Method::HG;
  if (s == "RA+HG" || s == "RAHG") return Method::RAHG;
  throw std::invalid_argument("unknown method '" + s + "' (expected FA, RA, HG or RA+HG)");
}

const char* to_string(Split s) { return s == Split::Training ? "train" : "validation"; }

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid experiment config: " + what); };
  if (n < 1) fail("n must be at least 1");
  if (densities.empty()) fail("densities must not be empty");
  for (double p : densities) {
    if (!(p > 0.0 && p <= 1.0)) fail("densities must lie in (0, 1]");
  }
  if (instances_per_density < 1) fail("instances_per_density must be at least 1");
  if (validation_instances < 1) fail("validation_instances must be at least 1");
  if (baseline_shots < 1 || shots < 1) fail("shot counts must be at least 1");
  if (!(baseline_T > 0.0) || !(tune_T > 0.0)) fail("anneal durations must be positive");
  if (anneal_T.empty()) fail("anneal_T must not be empty");
  for (double T : anneal_T) {
    if (!(T > 0.0) || !std::isfinite(T)) fail("anneal durations must be positive");
  }
  if (methods.empty()) fail("methods must not be empty");
  if (bayes.init_points < 1) fail("bayes.init_points must be at least 1");
  if (bayes.n_iter < 0) fail("bayes.n_iter must be non-negative");
  if (!(bayes.noise >= 0.0)) fail("bayes.noise must be non-negative");
  if (bayes.random_starts < 1) fail("bayes.random_starts must be at least 1");
  if (bayes.heatmap_resolution < 0 || bayes.heatmap_resolution == 1) fail("bayes.heatmap_resolution must be 0 or >= 2");
  if (dt && !(*dt > 0.0)) fail("dt must be positive");
  if (classical_sweeps < 1) fail("classical_sweeps must be at least 1");
  if (!(alpha1 >= 0.0) || !(alpha2 >= 0.0)) fail("planting strengths must be non-negative");
  if (!(edge_weights.lo < edge_weights.hi)) fail("edge weight range is empty");
  if (!(vertex_weights.lo < vertex_weights.hi)) fail("vertex weight range is empty");
  if (problem == ProblemKind::MaxClique && vertex_weights.lo < 0.0) fail("clique vertex weights must be positive");
  if (threads < 0) fail("threads must be non-negative");
}

SimConfig ExperimentConfig::sim(std::int64_t shot_count, std::uint64_t run_seed) const {
  SimConfig s;
  s.dt = dt;
  s.integrator = integrator;
  s.shots = shot_count;
  s.seed = run_seed;
  s.backend = backend;
  s.statevector_limit = statevector_limit;
  s.classical_sweeps = classical_sweeps;
  return s;
}

std::uint64_t instance_seed(std::uint64_t top_seed, int density_index, Split split, int k) {
  const std::uint64_t base = derive_seed(top_seed, {label_hash("instances"), static_cast<std::uint64_t>(density_index)});
  return base + 2 * static_cast<std::uint64_t>(k) + (split == Split::Validation ? 1 : 0);
}

std::uint64_t anneal_seed(std::uint64_t top_seed, std::uint64_t inst_seed) {
  return derive_seed(top_seed, {label_hash("anneal"), inst_seed});
}

std::vector<ProblemInstance> make_instances(const ExperimentConfig& cfg, int density_index, Split split) {
  cfg.validate();
  if (density_index < 0 || density_index >= static_cast<int>(cfg.densities.size())) {
    throw std::invalid_argument("density index out of range");
  }
  const double p = cfg.densities[density_index];
  const int count = split == Split::Training ? cfg.instances_per_density : cfg.validation_instances;
  std::vector<ProblemInstance> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k) {
    const std::uint64_t seed = instance_seed(cfg.seed, density_index, split, k);
    WeightedGraph g = cfg.problem == ProblemKind::MaxCut
                          ? gen_er_graph(cfg.n, p, cfg.edge_weights, std::nullopt, seed)
                          : gen_er_graph(cfg.n, p, std::nullopt, cfg.vertex_weights, seed);
    out.push_back({std::move(g), cfg.problem, p, seed});
  }
  return out;
}

IsingModel instance_model(const ProblemInstance& instance) {
  return instance.kind == ProblemKind::MaxCut ? maxcut_ising(instance.graph)
                                              : qubo_to_ising(maxclique_qubo(instance.graph));
}

Objective best_objective(const ProblemInstance& instance, const SampleSet& samples) {
  Objective best;
  for (const auto& r : samples.records) {
    if (r.config.size() != instance.graph.n) throw std::invalid_argument("sample length does not match the instance");
    double value = 0.0;
    if (instance.kind == ProblemKind::MaxCut) {
      value = cut_value(instance.graph, r.config);
    } else {
      const CliqueCheck c = clique_check(instance.graph, spins_to_binary(r.config));
      if (!c.is_clique) continue;
      value = c.weight;
    }
    if (!best.usable || value > best.value) {
      best.usable = true;
      best.value = value;
      best.config = r.config;
    }
  }
  return best;
}

namespace {

SampleSet draw(const Sampler& sampler, const IsingModel& model, const SchedulePlan& plan,
               const std::optional<SpinConfig>& x0, const SimConfig& sim) {
  return sampler ? sampler(model, plan, x0, sim) : anneal(model, plan, x0, sim);
}

}  // namespace

Objective run_baseline(const ProblemInstance& instance, const ExperimentConfig& cfg, const Sampler& sampler) {
  const IsingModel model = instance_model(instance);
  const SchedulePlan plan = make_plan(forward_path(cfg.baseline_T));
  const SampleSet samples =
      draw(sampler, model, plan, std::nullopt, cfg.sim(cfg.baseline_shots, anneal_seed(cfg.seed, instance.seed)));
  return best_objective(instance, samples);
}

std::vector<Objective> run_baselines(const std::vector<ProblemInstance>& instances, const ExperimentConfig& cfg,
                                     const Sampler& sampler) {
  std::vector<Objective> out(instances.size());
  parallel_for(static_cast<int>(instances.size()), cfg.threads,
               [&](int k) { out[k] = run_baseline(instances[k], cfg, sampler); });
  return out;
}

MethodParams fixed_params(const ExperimentConfig& cfg) {
  MethodParams p;
  p.alpha1 = cfg.alpha1;
  p.alpha2 = cfg.alpha2;
  return p;
}

SchedulePlan method_plan(Method method, const MethodParams& params, double T, const AnnealFunctions& functions) {
  auto reverse = [&] {
    const double t_a = T * params.u1;
    const double t_b = t_a + (T - t_a) * params.u2;
    return reverse_path(T, t_a, t_b, params.s_inv);
  };
  switch (method) {
    case Method::FA:
      return make_plan(forward_path(T), std::nullopt, functions);
    case Method::RA:
      return make_plan(reverse(), std::nullopt, functions);
    case Method::HG:
      return make_plan(forward_path(T), hgain_path(T, params.t_mid, params.g_mid), functions);
    case Method::RAHG:
      return make_plan(reverse(), hgain_path(T, params.t_mid, params.g_mid), functions);
  }
  throw std::invalid_argument("unknown method");
}

RunOutcome run_method(const ProblemInstance& instance, Method method, const MethodParams& params, double T,
                      const SpinConfig& x0, const ExperimentConfig& cfg, const Sampler& sampler) {
  const IsingModel model = instance_model(instance);
  const SchedulePlan plan = method_plan(method, params, T);
  const SimConfig sim = cfg.sim(cfg.shots, anneal_seed(cfg.seed, instance.seed));
  RunOutcome out;
  if (method == Method::FA || method == Method::RA) {
    out.samples = draw(sampler, model, plan, method == Method::RA ? std::optional<SpinConfig>(x0) : std::nullopt, sim);
  } else {
    const PlantedModel planted = plant(model, x0, params.alpha1, model.has_linear() ? params.alpha2 : 0.0);
    const SampleSet raw = draw(sampler, planted.model, plan,
                               method == Method::RAHG ? std::optional<SpinConfig>(planted.initial_state()) : std::nullopt,
                               sim);
    out.samples = filter_slack(raw, planted);
    out.z_plus_fraction =
        raw.shots > 0 ? static_cast<double>(out.samples.shots) / static_cast<double>(raw.shots) : 0.0;
  }
  out.best = best_objective(instance, out.samples);
  return out;
}

FitnessReport evaluate_fitness(Method method, const MethodParams& params, double T,
                               const std::vector<ProblemInstance>& instances, const std::vector<Objective>& baselines,
                               const ExperimentConfig& cfg, const Sampler& sampler) {
  if (instances.size() != baselines.size()) throw std::invalid_argument("one baseline per instance is required");
  const int m = static_cast<int>(instances.size());
  std::vector<std::optional<RunOutcome>> runs(m);
  parallel_for(m, cfg.threads, [&](int k) {
    if (!baselines[k].usable) return;
    runs[k] = run_method(instances[k], method, params, T, baselines[k].config, cfg, sampler);
  });

  FitnessReport report;
  report.improvements.assign(m, std::numeric_limits<double>::quiet_NaN());
  report.z_plus_fraction.assign(m, std::numeric_limits<double>::quiet_NaN());
  double sum = 0.0;
  int used = 0;
  for (int k = 0; k < m; ++k) {
    if (!runs[k]) {
      ++report.excluded;
      continue;
    }
    report.z_plus_fraction[k] = runs[k]->z_plus_fraction;
    if (!runs[k]->best.usable) {
      report.sentinel = true;
      report.improvements[k] = kSentinelFitness;
      continue;
    }
    report.improvements[k] = runs[k]->best.value - baselines[k].value;
    sum += report.improvements[k];
    ++used;
  }
  report.value = (report.sentinel || used == 0) ? kSentinelFitness : sum / used;
  report.sentinel = report.sentinel || used == 0;
  return report;
}

double fitness(Method method, const MethodParams& params, double T, const std::vector<ProblemInstance>& instances,
               const std::vector<Objective>& baselines, const ExperimentConfig& cfg, const Sampler& sampler) {
  return evaluate_fitness(method, params, T, instances, baselines, cfg, sampler).value;
}

std::vector<ScalingRow> tune_scaling_grid(const std::vector<ProblemInstance>& instances,
                                          const std::vector<Objective>& baselines, const MethodParams& params,
                                          double T, const ExperimentConfig& cfg, const Sampler& sampler) {
  std::vector<ScalingRow> rows;
  rows.reserve(100);
  for (int k = 1; k <= 100; ++k) {
    MethodParams p = params;
    p.alpha1 = k / 100.0;
    rows.push_back({p.alpha1, fitness(Method::HG, p, T, instances, baselines, cfg, sampler)});
  }
  return rows;
}

SearchSpace method_space(Method method, ProblemKind problem, TuneScope scope) {
  if (method == Method::FA) throw std::invalid_argument("the forward anneal has no tunable parameters");
  const bool planted = method == Method::HG || method == Method::RAHG;
  if (scope == TuneScope::Alphas && !planted) {
    throw std::invalid_argument(std::string("method ") + to_string(method) + " has no planting strengths");
  }
  std::vector<Dimension> dims;
  if (scope != TuneScope::Alphas) {
    if (method == Method::RA || method == Method::RAHG) {
      dims.push_back({"u1", 0.01, 0.99});
      dims.push_back({"u2", 0.0, 0.99});
      dims.push_back({"s_inv", 0.0, 0.99});
    }
    if (planted) {
      dims.push_back({"t_mid", 0.01, 0.99});
      dims.push_back({"g_mid", 0.0, 5.0});
    }
  }
  if (planted && scope != TuneScope::Schedule) {
    dims.push_back({"alpha1", 0.01, 1.0});
    if (problem == ProblemKind::MaxClique) dims.push_back({"alpha2", 0.01, 1.0});
  }
  return SearchSpace(std::move(dims));
}

namespace {

double* param_field(MethodParams& p, const std::string& name) {
  if (name == "alpha1") return &p.alpha1;
  if (name == "alpha2") return &p.alpha2;
  if (name == "t_mid") return &p.t_mid;
  if (name == "g_mid") return &p.g_mid;
  if (name == "u1") return &p.u1;
  if (name == "u2") return &p.u2;
  if (name == "s_inv") return &p.s_inv;
  throw std::invalid_argument("unknown parameter '" + name + "'");
}

}  // namespace

MethodParams params_from_point(const SearchSpace& space, const Eigen::VectorXd& x, MethodParams base) {
  if (x.size() != space.size()) throw std::invalid_argument("point has the wrong dimension");
  for (int k = 0; k < space.size(); ++k) *param_field(base, space[k].name) = x(k);
  return base;
}

Eigen::VectorXd point_from_params(const SearchSpace& space, const MethodParams& params) {
  MethodParams copy = params;
  Eigen::VectorXd x(space.size());
  for (int k = 0; k < space.size(); ++k) x(k) = *param_field(copy, space[k].name);
  return space.clamp(x);
}

TuneResult tune_schedules(Method method, const std::vector<ProblemInstance>& instances,
                          const std::vector<Objective>& baselines, const MethodParams& base, TuneScope scope,
                          const ExperimentConfig& cfg, std::uint64_t seed, const Sampler& sampler) {
  TuneResult result;
  result.method = method;
  result.space = method_space(method, cfg.problem, scope);

  OptimizeOptions opts;
  opts.init_points = cfg.bayes.init_points;
  opts.n_iter = cfg.bayes.n_iter;
  opts.noise = cfg.bayes.noise;
  opts.seed = seed;
  opts.acquisition = Acquisition::ucb(cfg.bayes.kappa);
  opts.suggest.random_starts = cfg.bayes.random_starts;
  opts.probes = {point_from_params(result.space, base)};
  opts.heatmap_resolution = result.space.size() >= 2 ? cfg.bayes.heatmap_resolution : 0;

  auto objective = [&](const Eigen::VectorXd& x) {
    const FitnessReport r =
        evaluate_fitness(method, params_from_point(result.space, x, base), cfg.tune_T, instances, baselines, cfg, sampler);
    double z = 0.0;
    int counted = 0;
    for (double f : r.z_plus_fraction) {
      if (!std::isnan(f)) {
        z += f;
        ++counted;
      }
    }
    result.z_plus_fraction.push_back(counted > 0 ? z / counted : 0.0);
    if (r.sentinel) ++result.sentinel_calls;
    return r.value;
  };
  result.opt = optimize(objective, result.space, opts);
  result.best = params_from_point(result.space, result.opt.best_point, base);
  return result;
}

std::string ParameterRegistry::key(ProblemKind problem, double density, Method method) {
  return std::string(to_string(problem)) + "|" + format_number(density) + "|" + to_string(method);
}

std::optional<MethodParams> ParameterRegistry::find(ProblemKind problem, double density, Method method) const {
  auto it = entries_.find(key(problem, density, method));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void ParameterRegistry::set(ProblemKind problem, double density, Method method, const MethodParams& params) {
  entries_[key(problem, density, method)] = params;
}

std::vector<ResultRow> compare_density(const std::vector<Method>& methods, const std::vector<double>& T_candidates,
                                       const ExperimentConfig& cfg, const ParameterRegistry& registry, double density,
                                       const std::vector<ProblemInstance>& instances,
                                       const std::vector<Objective>& baselines, const Sampler& sampler) {
  std::vector<ResultRow> rows;
  for (Method method : methods) {
    const MethodParams params = registry.find(cfg.problem, density, method).value_or(fixed_params(cfg));
    for (double T : T_candidates) {
      const FitnessReport r = evaluate_fitness(method, params, T, instances, baselines, cfg, sampler);
      ResultRow row;
      row.method = method;
      row.anneal_T = T;
      row.density = density;
      double z = 0.0;
      int z_count = 0;
      for (std::size_t k = 0; k < r.improvements.size(); ++k) {
        if (std::isnan(r.improvements[k])) continue;
        row.values.push_back(r.improvements[k]);
        z += r.z_plus_fraction[k];
        ++z_count;
      }
      row.mean_improvement =
          row.values.empty() ? kSentinelFitness
                             : std::accumulate(row.values.begin(), row.values.end(), 0.0) / row.values.size();
      row.meta["fitness"] = format_number(r.value);
      row.meta["excluded"] = std::to_string(r.excluded);
      row.meta["sentinel"] = r.sentinel ? "true" : "false";
      row.meta["z_plus_fraction"] = format_number(z_count > 0 ? z / z_count : 0.0);
      row.meta["problem"] = to_string(cfg.problem);
      row.meta["n"] = std::to_string(cfg.n);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return std::tie(a.method, a.density, a.anneal_T) < std::tie(b.method, b.density, b.anneal_T);
  });
}

std::vector<ResultRow> run_comparison(const std::vector<Method>& methods, const std::vector<double>& T_candidates,
                                      const ExperimentConfig& cfg, const ParameterRegistry& registry,
                                      const Sampler& sampler) {
  cfg.validate();
  std::vector<ResultRow> rows;
  for (int d = 0; d < static_cast<int>(cfg.densities.size()); ++d) {
    const auto instances = make_instances(cfg, d, Split::Validation);
    const auto baselines = run_baselines(instances, cfg, sampler);
    auto part = compare_density(methods, T_candidates, cfg, registry, cfg.densities[d], instances, baselines, sampler);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  sort_rows(rows);
  return rows;
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  int workers = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, count);
  if (workers == 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (int k = next++; k < count; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace pathlab
