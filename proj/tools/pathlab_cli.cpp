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

// pathlab: command-line driver for the experiment stages.
//
// Exit codes: 0 success, 2 validation error, 3 runtime or simulation error.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "pathlab/io.hpp"
#include "pathlab/pipeline.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

struct GlobalOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> backend;
  std::optional<std::string> method;
  std::optional<int> threads;
  std::string out = "pathlab-out";
};

pathlab::ExperimentConfig resolve_config(const GlobalOptions& o, bool is_gen) {
  pathlab::ExperimentConfig cfg;
  std::string path = o.config;
  // Later stages default to the configuration recorded by `gen`.
  if (path.empty() && !is_gen) {
    const auto recorded = std::filesystem::path(o.out) / "config.json";
    if (std::filesystem::exists(recorded)) path = recorded.string();
  }
  if (!path.empty()) cfg = pathlab::config_from_json(pathlab::read_json(path));
  if (o.seed) cfg.seed = *o.seed;
  if (o.backend) cfg.backend = pathlab::backend_from_string(*o.backend);
  if (o.method) cfg.method = pathlab::method_from_string(*o.method);
  if (o.threads) cfg.threads = *o.threads;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reverse-anneal and h-gain schedule experiments on a simulated annealer"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions opts;
  app.add_option("--config", opts.config, "Experiment configuration (JSON)");
  app.add_option("--seed", opts.seed, "Top-level seed");
  app.add_option("--backend", opts.backend, "Simulation backend")->check(CLI::IsMember({"statevector", "classical"}));
  app.add_option("--out", opts.out, "Output directory");
  app.add_option("--method", opts.method, "Method for tune-schedule")->check(CLI::IsMember({"RA", "HG", "RA+HG"}));
  app.add_option("--threads", opts.threads, "Worker threads (0 = hardware count)")->check(CLI::NonNegativeNumber);

  struct Stage {
    const char* name;
    const char* help;
    void (*run)(const pathlab::ExperimentConfig&, const std::string&);
  };
  const Stage stages[] = {
      {"gen", "Generate training and validation instances", pathlab::stage_gen},
      {"baseline", "Best-of forward-anneal baselines", pathlab::stage_baseline},
      {"tune-scaling", "Sweep the planting strength alpha1", pathlab::stage_tune_scaling},
      {"tune-schedule", "Bayesian optimization of a method's schedule", pathlab::stage_tune_schedule},
      {"compare", "Compare methods on the validation instances", pathlab::stage_compare},
      {"export", "Write CSV, JSON and SVG exports", pathlab::stage_export},
  };
  for (const auto& s : stages) app.add_subcommand(s.name, s.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    for (const auto& s : stages) {
      if (app.got_subcommand(s.name)) {
        const auto cfg = resolve_config(opts, std::string(s.name) == "gen");
        s.run(cfg, opts.out);
      }
    }
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitRuntime;
  }
  return 0;
}
