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

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "pathlab/io.hpp"
#include "pathlab/svg.hpp"

using namespace pathlab;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pathlab_io_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Numbers, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.5), "0.5");
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-1000.0), "-1000");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(GraphJson, RoundTrip) {
  const auto g = gen_er_graph(9, 0.5, WeightRange{-1, 1}, WeightRange{0.001, 1}, 4);
  EXPECT_EQ(graph_from_json(to_json(g)), g);
  const auto u = gen_er_graph(6, 0.5, std::nullopt, std::nullopt, 4);
  EXPECT_EQ(graph_from_json(to_json(u)), u);
}

TEST(ModelJson, RoundTripAndValidation) {
  std::mt19937_64 rng(1);
  const auto m = oracle::build<Vartype::Spin>(oracle::random_raw(rng, 6));
  EXPECT_EQ(ising_from_json(to_json(m)), m);
  const auto q = oracle::build<Vartype::Binary>(oracle::random_raw(rng, 4));
  EXPECT_EQ(qubo_from_json(to_json(q)), q);
  auto j = to_json(m);
  j["quadratic"] = json::array({json::array({3, 1, 0.5})});
  EXPECT_THROW(ising_from_json(j), std::invalid_argument);
  EXPECT_THROW(qubo_from_json(to_json(m)), std::invalid_argument);
}

TEST(ScheduleJson, ByteIdenticalRoundTrip) {
  const std::vector<SchedulePlan> plans{
      make_plan(forward_path(1.0)),
      make_plan(forward_path(2.5), hgain_path(2.5, 0.71, 2.67)),
      make_plan(reverse_path(1.0, 0.25, 0.75, 0.25)),
      make_plan(reverse_path(2000.0, 0.1 * 2000, 0.1 * 2000 + 0.3 * 1800, 0.37), hgain_path(2000.0, 0.33, 1.1)),
  };
  for (const auto& plan : plans) {
    const std::string text = to_json(plan).dump(2);
    const auto back = schedule_from_json(json::parse(text));
    EXPECT_EQ(back.anneal, plan.anneal);
    EXPECT_EQ(back.hgain, plan.hgain);
    EXPECT_EQ(to_json(back).dump(2), text);
  }
}

TEST(ScheduleJson, InvalidScheduleRejected) {
  json j = to_json(make_plan(forward_path(1.0)));
  j["anneal"][1][1] = 1.5;
  EXPECT_THROW(schedule_from_json(j), std::invalid_argument);
}

TEST(SampleJson, RoundTrip) {
  SampleSet s;
  s.records = {{oracle::to_config({1, -1, 1}), 3, -0.25}, {oracle::to_config({-1, -1, 1}), 2, 0.5}};
  s.shots = 5;
  s.meta["seed"] = "4";
  const auto back = samples_from_json(to_json(s));
  EXPECT_EQ(back.shots, 5);
  ASSERT_EQ(back.records.size(), 2u);
  EXPECT_EQ(back.records[1].config, s.records[1].config);
  EXPECT_EQ(back.records[0].energy, -0.25);
  EXPECT_EQ(back.meta, s.meta);
  EXPECT_EQ(to_json(back), to_json(s));
}

TEST(ConfigJson, RoundTripAndStrictKeys) {
  ExperimentConfig cfg;
  cfg.problem = ProblemKind::MaxClique;
  cfg.densities = {0.1, 0.5, 0.9};
  cfg.dt = 0.01;
  cfg.methods = {Method::HG, Method::RAHG};
  cfg.bayes.n_iter = 7;
  cfg.seed = 123456789012345ULL;
  const auto back = config_from_json(to_json(cfg));
  EXPECT_EQ(to_json(back), to_json(cfg));
  EXPECT_EQ(back.seed, cfg.seed);
  auto j = to_json(cfg);
  j["densitys"] = json::array({0.5});
  EXPECT_THROW(config_from_json(j), std::invalid_argument);
  j = to_json(cfg);
  j["bayes"]["kapa"] = 1.0;
  EXPECT_THROW(config_from_json(j), std::invalid_argument);
  j = to_json(cfg);
  j["densities"] = json::array({1.5});
  EXPECT_THROW(config_from_json(j), std::invalid_argument);
  j = to_json(cfg);
  j["n"] = "twelve";
  EXPECT_THROW(config_from_json(j), std::invalid_argument);
  EXPECT_NO_THROW(config_from_json(json::object()));
}

TEST(RegistryJson, RoundTrip) {
  ParameterRegistry r;
  r.set(ProblemKind::MaxCut, 0.1, Method::HG, MethodParams{0.3, 0.5, 0.6, 1.2, 0.25, 2.0 / 3.0, 0.25});
  r.set(ProblemKind::MaxCut, 0.9, Method::RA, MethodParams{});
  const auto back = registry_from_json(to_json(r));
  EXPECT_EQ(back.entries(), r.entries());
}

TEST(Csv, TableHeaderAndRows) {
  ResultRow row;
  row.method = Method::RAHG;
  row.anneal_T = 2000;
  row.density = 0.3;
  row.mean_improvement = -0.125;
  const auto l = lines(table_csv({row}));
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[0], "method,T,density,mean_improvement");
  EXPECT_EQ(l[1], "RA+HG,2000,0.3,-0.125");
}

TEST(Csv, HeatmapDimensionsMatchResolution) {
  std::vector<Observation> obs{{Eigen::Vector2d(0.1, 0.2), 1.0}, {Eigen::Vector2d(0.7, 0.4), 2.0}};
  const auto gp = gp_fit(obs);
  const SearchSpace space({{"t_mid", 0.01, 0.99}, {"g_mid", 0.0, 5.0}});
  for (int res : {2, 7, 50}) {
    const auto h = surrogate_grid(gp, space, res);
    const auto l = lines(heatmap_csv(h));
    EXPECT_EQ(l[0], "x,y,mean,variance");
    EXPECT_EQ(static_cast<int>(l.size()), 1 + res * res);
    const auto back = heatmap_from_json(to_json(h));
    EXPECT_EQ(back.mean, h.mean);
    EXPECT_EQ(back.xs, h.xs);
  }
}

TEST(Csv, ScalingTable) {
  const auto l = lines(scaling_csv({{0.01, 0.5}, {0.02, -1000}}));
  ASSERT_EQ(l.size(), 3u);
  EXPECT_EQ(l[0], "alpha1,mean_improvement");
  EXPECT_EQ(l[2], "0.02,-1000");
}

TEST(OptJson, HistoryRoundTrip) {
  const SearchSpace space({{"a", 0.0, 1.0}, {"b", 0.0, 2.0}});
  OptimizeOptions o;
  o.init_points = 4;
  o.n_iter = 2;
  o.heatmap_resolution = 4;
  const auto r = optimize([](const Eigen::VectorXd& x) { return x(0) * x(1); }, space, o);
  const auto h = opt_history_from_json(to_json(r, space));
  ASSERT_EQ(h.history.size(), 6u);
  EXPECT_EQ(h.history[3].point, r.history[3].point);
  EXPECT_EQ(h.history[3].value, r.history[3].value);
  EXPECT_EQ(h.space.dims().size(), 2u);
  ASSERT_TRUE(h.heatmap);
  EXPECT_EQ(h.heatmap->variance, r.heatmap->variance);
  EXPECT_EQ(lines(history_csv(r, space)).size(), 7u);
}

TEST(Files, WriteReadAndErrorsCarryPath) {
  const auto dir = scratch("files");
  const auto file = (dir / "nested" / "x.json").string();
  write_json(file, json{{"k", 1}});
  EXPECT_EQ(read_json(file)["k"], 1);
  EXPECT_EQ(read_text(file).back(), '\n');
  write_text((dir / "bad.json").string(), "{not json");
  EXPECT_THROW(read_json((dir / "bad.json").string()), std::invalid_argument);
  try {
    read_text((dir / "missing.txt").string());
    FAIL();
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("missing.txt"), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(Svg, WellFormedOutputs) {
  const auto plot = line_plot_svg({{"a", {0, 1, 2}, {0, 1, 4}}, {"b", {0, 2}, {1, 1}}}, "t", "x", "y");
  EXPECT_EQ(plot.rfind("<svg", 0), 0u);
  EXPECT_NE(plot.find("</svg>"), std::string::npos);
  Heatmap h;
  h.name_x = "x";
  h.name_y = "y";
  h.xs = Eigen::VectorXd::LinSpaced(3, 0, 1);
  h.ys = Eigen::VectorXd::LinSpaced(3, 0, 1);
  h.mean = Eigen::MatrixXd::Random(3, 3);
  h.variance = Eigen::MatrixXd::Constant(3, 3, 0.2);
  const auto hm = heatmap_svg(h, HeatmapLayer::Variance, "var");
  EXPECT_NE(hm.find("</svg>"), std::string::npos);
  EXPECT_GE(static_cast<int>(std::count(hm.begin(), hm.end(), '\n')), 9);
}
