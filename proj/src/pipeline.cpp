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

#include "pathlab/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "pathlab/io.hpp"
#include "pathlab/random.hpp"
#include "pathlab/svg.hpp"

namespace pathlab {

namespace fs = std::filesystem;

std::string density_tag(double p) { return "p" + format_number(p); }

namespace {

std::string join(const std::string& dir, const std::string& rel) { return (fs::path(dir) / rel).string(); }

const char* method_tag(Method m) {
  switch (m) {
    case Method::FA:
      return "fa";
    case Method::RA:
      return "ra";
    case Method::HG:
      return "hg";
    case Method::RAHG:
      return "rahg";
  }
  return "?";
}

std::string baseline_key(double density, Split split) { return std::string(to_string(split)) + "|" + format_number(density); }

void require_file(const std::string& path, const char* stage) {
  if (!fs::exists(path)) {
    throw std::runtime_error("'" + path + "' not found; run the '" + stage + "' stage first");
  }
}

void note(const std::string& line) { std::fprintf(stderr, "%s\n", line.c_str()); }

}  // namespace

void stage_gen(const ExperimentConfig& cfg, const std::string& out) {
  cfg.validate();
  write_json(join(out, "config.json"), to_json(cfg));
  json entries = json::array();
  for (int d = 0; d < static_cast<int>(cfg.densities.size()); ++d) {
    for (Split split : {Split::Training, Split::Validation}) {
      const auto instances = make_instances(cfg, d, split);
      for (std::size_t k = 0; k < instances.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof(name), "graph_%03zu.json", k);
        const std::string rel =
            std::string("instances/") + to_string(split) + "/" + density_tag(cfg.densities[d]) + "/" + name;
        write_json(join(out, rel), to_json(instances[k].graph));
        entries.push_back({{"split", to_string(split)},
                           {"density", cfg.densities[d]},
                           {"index", k},
                           {"seed", instances[k].seed},
                           {"file", rel}});
      }
    }
  }
  json manifest = {{"problem", to_string(cfg.problem)},
                   {"n", cfg.n},
                   {"seed", cfg.seed},
                   {"edge_weights", {cfg.edge_weights.lo, cfg.edge_weights.hi}},
                   {"vertex_weights", {cfg.vertex_weights.lo, cfg.vertex_weights.hi}},
                   {"instances", entries}};
  write_json(join(out, "instances/manifest.json"), manifest);
  note("gen: wrote " + std::to_string(entries.size()) + " instances to " + join(out, "instances"));
}

std::vector<ProblemInstance> load_instances(const ExperimentConfig& cfg, const std::string& out, int density_index,
                                            Split split) {
  const std::string path = join(out, "instances/manifest.json");
  require_file(path, "gen");
  const json manifest = read_json(path);
  if (manifest.at("problem").get<std::string>() != to_string(cfg.problem)) {
    throw std::invalid_argument("instances in '" + out + "' were generated for a different problem");
  }
  const double p = cfg.densities.at(density_index);
  std::vector<ProblemInstance> out_set;
  for (const auto& e : manifest.at("instances")) {
    if (e.at("split").get<std::string>() != to_string(split) || e.at("density").get<double>() != p) continue;
    out_set.push_back({graph_from_json(read_json(join(out, e.at("file").get<std::string>()))), cfg.problem, p,
                       e.at("seed").get<std::uint64_t>()});
  }
  if (out_set.empty()) {
    throw std::invalid_argument("no " + std::string(to_string(split)) + " instances for density " + format_number(p));
  }
  return out_set;
}

void stage_baseline(const ExperimentConfig& cfg, const std::string& out) {
  cfg.validate();
  json j = json::object();
  for (int d = 0; d < static_cast<int>(cfg.densities.size()); ++d) {
    for (Split split : {Split::Training, Split::Validation}) {
      const auto instances = load_instances(cfg, out, d, split);
      const auto baselines = run_baselines(instances, cfg);
      json arr = json::array();
      int undefined = 0;
      for (const auto& b : baselines) {
        arr.push_back(to_json(b));
        if (!b.usable) ++undefined;
      }
      j[baseline_key(cfg.densities[d], split)] = arr;
      if (undefined > 0) {
        note("baseline: " + std::to_string(undefined) + " " + to_string(split) + " instance(s) at density " +
             format_number(cfg.densities[d]) + " have no valid sample; they are excluded");
      }
    }
  }
  write_json(join(out, "baselines.json"), j);
  note("baseline: wrote " + join(out, "baselines.json"));
}

std::vector<Objective> load_baselines(const std::string& out, double density, Split split) {
  const std::string path = join(out, "baselines.json");
  require_file(path, "baseline");
  const json j = read_json(path);
  const std::string key = baseline_key(density, split);
  if (!j.contains(key)) throw std::invalid_argument("baselines.json has no entry '" + key + "'");
  std::vector<Objective> out_set;
  for (const auto& o : j.at(key)) out_set.push_back(objective_from_json(o));
  return out_set;
}

ParameterRegistry load_registry(const std::string& out) {
  const std::string path = join(out, "registry.json");
  if (!fs::exists(path)) return {};
  return registry_from_json(read_json(path));
}

void stage_tune_scaling(const ExperimentConfig& cfg, const std::string& out) {
  cfg.validate();
  ParameterRegistry registry = load_registry(out);
  for (int d = 0; d < static_cast<int>(cfg.densities.size()); ++d) {
    const double p = cfg.densities[d];
    const auto instances = load_instances(cfg, out, d, Split::Training);
    const auto baselines = load_baselines(out, p, Split::Training);
    const MethodParams base = registry.find(cfg.problem, p, Method::HG).value_or(fixed_params(cfg));
    const auto rows = tune_scaling_grid(instances, baselines, base, cfg.tune_T, cfg);
    write_text(join(out, "scaling/scaling_" + density_tag(p) + ".csv"), scaling_csv(rows));
    const auto best = std::max_element(rows.begin(), rows.end(), [](const ScalingRow& a, const ScalingRow& b) {
      return a.mean_improvement < b.mean_improvement;
    });
    for (Method m : {Method::HG, Method::RAHG}) {
      MethodParams params = registry.find(cfg.problem, p, m).value_or(fixed_params(cfg));
      params.alpha1 = best->alpha1;
      registry.set(cfg.problem, p, m, params);
    }
    note("tune-scaling: density " + format_number(p) + " best alpha1 " + format_number(best->alpha1) +
         " (mean improvement " + format_number(best->mean_improvement) + ")");
  }
  write_json(join(out, "registry.json"), to_json(registry));
}

void stage_tune_schedule(const ExperimentConfig& cfg, const std::string& out) {
  cfg.validate();
  const Method method = cfg.method;
  if (method == Method::FA) throw std::invalid_argument("the forward anneal has no schedule to tune");
  const bool planted = method == Method::HG || method == Method::RAHG;
  ParameterRegistry registry = load_registry(out);
  for (int d = 0; d < static_cast<int>(cfg.densities.size()); ++d) {
    const double p = cfg.densities[d];
    const auto instances = load_instances(cfg, out, d, Split::Training);
    const auto baselines = load_baselines(out, p, Split::Training);
    MethodParams base = registry.find(cfg.problem, p, method).value_or(fixed_params(cfg));

    std::vector<std::pair<std::string, TuneScope>> passes;
    if (cfg.tune_alphas && planted) {
      passes.emplace_back("", TuneScope::ScheduleAndAlphas);
      if (cfg.problem == ProblemKind::MaxClique) passes.emplace_back("_alphas", TuneScope::Alphas);
    } else {
      passes.emplace_back("", TuneScope::Schedule);
    }
    for (std::size_t pass = 0; pass < passes.size(); ++pass) {
      const std::uint64_t seed =
          derive_seed(cfg.seed, {label_hash("tune"), static_cast<std::uint64_t>(method), static_cast<std::uint64_t>(d),
                                 static_cast<std::uint64_t>(pass)});
      const TuneResult r = tune_schedules(method, instances, baselines, base, passes[pass].second, cfg, seed);
      const std::string stem = std::string("tune/") + method_tag(method) + "_" + density_tag(p) + passes[pass].first;
      json j = to_json(r.opt, r.space);
      j["method"] = to_string(method);
      j["density"] = p;
      j["best_params"] = to_json(r.best);
      j["z_plus_fraction"] = r.z_plus_fraction;
      j["sentinel_calls"] = r.sentinel_calls;
      write_json(join(out, stem + ".json"), j);
      write_text(join(out, stem + "_history.csv"), history_csv(r.opt, r.space));
      if (r.opt.heatmap) write_text(join(out, stem + "_heatmap.csv"), heatmap_csv(*r.opt.heatmap));
      write_json(join(out, stem + "_schedule.json"), to_json(method_plan(method, r.best, cfg.tune_T)));
      base = r.best;
      note(std::string("tune-schedule: ") + to_string(method) + " density " + format_number(p) + " best fitness " +
           format_number(r.opt.best_value) + " after " + std::to_string(r.opt.history.size()) + " calls (" +
           std::to_string(r.sentinel_calls) + " sentinel)");
    }
    registry.set(cfg.problem, p, method, base);
  }
  write_json(join(out, "registry.json"), to_json(registry));
}

void stage_compare(const ExperimentConfig& cfg, const std::string& out) {
  cfg.validate();
  const ParameterRegistry registry = load_registry(out);
  std::vector<ResultRow> rows;
  for (int d = 0; d < static_cast<int>(cfg.densities.size()); ++d) {
    const double p = cfg.densities[d];
    const auto instances = load_instances(cfg, out, d, Split::Validation);
    const auto baselines = load_baselines(out, p, Split::Validation);
    auto part = compare_density(cfg.methods, cfg.anneal_T, cfg, registry, p, instances, baselines);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  sort_rows(rows);
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  write_json(join(out, "results.json"), {{"config", to_json(cfg)}, {"rows", arr}});
  write_text(join(out, "table.csv"), table_csv(rows));
  note("compare: wrote " + std::to_string(rows.size()) + " rows to " + join(out, "table.csv"));
}

namespace {

std::vector<ScalingRow> parse_scaling_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<ScalingRow> rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    rows.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
  }
  return rows;
}

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& suffix) {
  std::vector<fs::path> files;
  if (!fs::exists(dir)) return files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

void stage_export(const ExperimentConfig& cfg, const std::string& out) {
  cfg.validate();
  const std::string dir = join(out, "export");
  int written = 0;

  const std::string results = join(out, "results.json");
  if (fs::exists(results)) {
    std::vector<ResultRow> rows;
    for (const auto& r : read_json(results).at("rows")) rows.push_back(result_row_from_json(r));
    write_text(join(dir, "table.csv"), table_csv(rows));
    std::map<std::string, Series> by_key;
    for (const auto& r : rows) {
      const std::string key = std::string(to_string(r.method)) + " p=" + format_number(r.density);
      auto& s = by_key[key];
      s.name = key;
      s.xs.push_back(r.anneal_T);
      s.ys.push_back(r.mean_improvement);
    }
    std::vector<Series> series;
    for (auto& [k, s] : by_key) series.push_back(std::move(s));
    write_text(join(dir, "improvement_vs_T.svg"),
               line_plot_svg(series, "Mean improvement over baseline", "anneal time T", "mean improvement"));
    written += 2;
  }

  std::vector<Series> scaling;
  for (const auto& f : sorted_files(join(out, "scaling"), ".csv")) {
    const auto rows = parse_scaling_csv(read_text(f.string()));
    Series s;
    s.name = f.stem().string();
    for (const auto& r : rows) {
      s.xs.push_back(r.alpha1);
      s.ys.push_back(r.mean_improvement);
    }
    scaling.push_back(std::move(s));
  }
  if (!scaling.empty()) {
    write_text(join(dir, "scaling.svg"), line_plot_svg(scaling, "Scaling factor sweep", "alpha1", "mean improvement"));
    ++written;
  }

  for (const auto& f : sorted_files(join(out, "tune"), ".json")) {
    const std::string stem = f.stem().string();
    if (stem.size() >= 9 && stem.compare(stem.size() - 9, 9, "_schedule") == 0) continue;
    const OptHistory h = opt_history_from_json(read_json(f.string()));
    OptResult r;
    r.history = h.history;
    const auto best = r.best_so_far();
    Series conv{stem, {}, best};
    for (std::size_t k = 0; k < best.size(); ++k) conv.xs.push_back(static_cast<double>(k + 1));
    write_text(join(dir, stem + "_convergence.svg"),
               line_plot_svg({conv}, "Best fitness so far", "fitness call", "best fitness"));
    ++written;
    if (h.heatmap) {
      write_text(join(dir, stem + "_heatmap.csv"), heatmap_csv(*h.heatmap));
      write_text(join(dir, stem + "_mean.svg"), heatmap_svg(*h.heatmap, HeatmapLayer::Mean, stem + " surrogate mean", h.history));
      write_text(join(dir, stem + "_variance.svg"),
                 heatmap_svg(*h.heatmap, HeatmapLayer::Variance, stem + " surrogate variance", h.history));
      written += 3;
    }
  }

  const ParameterRegistry registry = load_registry(out);
  for (double p : cfg.densities) {
    for (Method m : cfg.methods) {
      const MethodParams params = registry.find(cfg.problem, p, m).value_or(fixed_params(cfg));
      write_json(join(dir, std::string("schedule_") + method_tag(m) + "_" + density_tag(p) + ".json"),
                 to_json(method_plan(m, params, cfg.tune_T)));
      ++written;
    }
  }
  note("export: wrote " + std::to_string(written) + " files to " + dir);
}

}  // namespace pathlab
