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
#include <sstream>

#include "pathlab/schedule.hpp"

using namespace pathlab;

namespace {

bool has_kind(const std::vector<Violation>& v, Violation::Kind k) {
  return std::any_of(v.begin(), v.end(), [k](const Violation& x) { return x.kind == k; });
}

}  // namespace

TEST(ForwardPath, LinearRamp) {
  EXPECT_DOUBLE_EQ(eval_path(forward_path(1.0), 0.5), 0.5);
  EXPECT_DOUBLE_EQ(eval_path(forward_path(2000.0), 500.0), 0.25);
  const auto p = forward_path(3.0);
  EXPECT_EQ(eval_path(p, 0.0), 0.0);
  EXPECT_EQ(eval_path(p, 3.0), 1.0);
  EXPECT_THROW(eval_path(p, 3.5), std::out_of_range);
  EXPECT_THROW(forward_path(0.0), std::invalid_argument);
}

TEST(ReversePath, FixedShape) {
  const double T = 4.0;
  const auto p = reverse_path(T, 0.25 * T, 0.75 * T, 0.25);
  const std::vector<PathPoint> expect{{0, 1}, {1, 0.25}, {3, 0.25}, {4, 1}};
  EXPECT_EQ(p.points, expect);
}

TEST(ReversePath, NearOneStaysNearOne) {
  const double eps = 1e-6;
  const auto p = reverse_path(1.0, 0.3, 0.6, 1.0 - eps);
  for (double t = 0.0; t <= 1.0; t += 0.01) EXPECT_GE(eval_path(p, t), 1.0 - eps);
}

TEST(ReversePath, PauseAndInterpolation) {
  const auto p = reverse_path(1.0, 0.25, 0.75, 0.25);
  EXPECT_EQ(eval_path(p, 0.5), 0.25);
  EXPECT_DOUBLE_EQ(eval_path(p, 0.125), 0.625);
  EXPECT_EQ(eval_path(p, 0.25), 0.25);
}

TEST(ReversePath, RejectsInvertedOrOutOfRangeTimes) {
  EXPECT_THROW(reverse_path(1.0, 0.0, 0.5, 0.2), std::invalid_argument);
  EXPECT_THROW(reverse_path(1.0, 0.6, 0.5, 0.2), std::invalid_argument);
  EXPECT_THROW(reverse_path(1.0, 0.2, 1.0, 0.2), std::invalid_argument);
  EXPECT_THROW(reverse_path(1.0, 0.2, 0.5, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(reverse_path(1.0, 0.5, 0.5, 0.2));
}

TEST(HGainPath, FixedShape) {
  const auto p = hgain_path(2.0, 0.5, 2.5);
  const std::vector<PathPoint> expect{{0, 5}, {1, 2.5}, {2, 0}};
  EXPECT_EQ(p.points, expect);
  EXPECT_DOUBLE_EQ(eval_path(hgain_path(1.0, 0.5, 2.5), 0.75), 1.25);
}

TEST(HGainPath, FigureShapeMidpoint) {
  const auto p = hgain_path(1.0, 0.71, 2.67);
  EXPECT_EQ(eval_path(p, 0.71), 2.67);
}

TEST(HGainPath, ZeroPath) {
  const auto p = hgain_path(1.0, 0.4, 0.0, 0.0);
  for (double t = 0.0; t <= 1.0; t += 0.05) EXPECT_EQ(eval_path(p, t), 0.0);
}

TEST(HGainPath, SteepMidpointRejected) {
  // g0 = 5 falling to 0 over 0.005 T is a slope of 1000.
  EXPECT_THROW(hgain_path(1.0, 0.005, 0.0), std::invalid_argument);
  EXPECT_THROW(hgain_path(1.0, 0.5, 5.5), std::invalid_argument);
}

TEST(Validate, TwentyOnePointsRejected) {
  HGainPath p;
  for (int k = 0; k <= 20; ++k) p.points.push_back({k / 20.0, 1.0});
  const auto v = validate(p);
  EXPECT_TRUE(has_kind(v, Violation::Kind::PointCount));
  p.points.pop_back();
  p.points.back().t = 1.0;
  EXPECT_TRUE(validate(p).empty());
}

TEST(Validate, SteepSegmentRejected) {
  const HGainPath p{{{0, 0}, {0.001, 5}, {1, 5}}};
  const auto v = validate(p);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].kind, Violation::Kind::Slope);
  EXPECT_EQ(v[0].index, 0u);
}

TEST(Validate, SlopeIsInUnitsOfDuration) {
  // The same shape stretched in time has the same normalized slope.
  const HGainPath p{{{0, 0}, {1, 5}, {1000, 5}}};
  EXPECT_TRUE(has_kind(validate(p), Violation::Kind::Slope));
}

TEST(Validate, GainRange) {
  EXPECT_TRUE(validate(HGainPath{{{0, 0}, {0.5, -3}, {1, 0}}}).empty());
  EXPECT_TRUE(has_kind(validate(HGainPath{{{0, 0}, {0.5, 6}, {1, 0}}}), Violation::Kind::Range));
}

TEST(Validate, AnnealPathChecks) {
  EXPECT_TRUE(validate(forward_path(1.0)).empty());
  EXPECT_TRUE(has_kind(validate(AnnealPath{{{0, 0}, {1, 1.2}}}), Violation::Kind::Range));
  EXPECT_TRUE(has_kind(validate(AnnealPath{{{0, 0}, {0.5, 0.5}, {0.5, 0.7}, {1, 1}}}), Violation::Kind::TimeOrder));
  EXPECT_TRUE(has_kind(validate(AnnealPath{{{0.1, 0}, {1, 1}}}), Violation::Kind::Endpoint));
  EXPECT_TRUE(has_kind(validate(AnnealPath{{{0, 0}}}), Violation::Kind::PointCount));
}

TEST(Validate, FixedShapesAreClean) {
  for (double T : {1.0, 20.0, 2000.0}) {
    EXPECT_TRUE(validate(reverse_path(T, 0.25 * T, 0.75 * T, 0.25)).empty());
    EXPECT_TRUE(validate(hgain_path(T, 0.5, 2.5)).empty());
  }
}

TEST(MakePlan, DurationMismatchRejected) {
  EXPECT_THROW(make_plan(forward_path(1.0), hgain_path(2.0, 0.5, 2.5)), std::invalid_argument);
  const auto plan = make_plan(forward_path(2.0), hgain_path(2.0, 0.5, 2.5));
  EXPECT_FALSE(plan.needs_initial_state());
  EXPECT_TRUE(make_plan(reverse_path(1, 0.25, 0.75, 0.25)).needs_initial_state());
}

TEST(EffectiveGain, ZeroGain) {
  const auto plan = make_plan(forward_path(1.0), hgain_path(1.0, 0.5, 0.0, 0.0));
  EXPECT_EQ(effective_gain(plan, 0.3), 0.0);
}

TEST(EffectiveGain, EndpointArithmetic) {
  const auto plan =
      make_plan(AnnealPath{{{0, 1}, {1, 1}}}, HGainPath{{{0, 5}, {1, 5}}}, AnnealFunctions::linear(1.0, 3.0));
  EXPECT_DOUBLE_EQ(effective_gain(plan, 0.5, true), 2.5);
  EXPECT_DOUBLE_EQ(effective_gain(plan, 0.5, false), 7.5);
}

TEST(EffectiveGain, PauseTimesGainMidpoint) {
  const auto plan = make_plan(reverse_path(1.0, 0.6, 0.89, 0.21), hgain_path(1.0, 0.71, 2.67));
  EXPECT_NEAR(effective_gain(plan, 0.71, true), 0.21 * 2.67 / 2, 1e-12);
}

TEST(EffectiveGain, InvariantUnderTimeRescaling) {
  const auto a = make_plan(reverse_path(1.0, 0.3, 0.6, 0.4), hgain_path(1.0, 0.45, 3.0));
  const double c = 250.0;
  const auto b = make_plan(reverse_path(c, 0.3 * c, 0.6 * c, 0.4), hgain_path(c, 0.45, 3.0));
  for (double t = 0.0; t <= 1.0; t += 0.07) EXPECT_NEAR(effective_gain(a, t), effective_gain(b, c * t), 1e-12);
}

TEST(EffectiveGain, RequiresGainPath) {
  EXPECT_THROW(effective_gain(make_plan(forward_path(1.0)), 0.5), std::invalid_argument);
}

TEST(AnnealFunctions, DefaultLinear) {
  const auto f = default_anneal_functions();
  for (double s : {0.0, 0.3, 1.0}) {
    EXPECT_DOUBLE_EQ(f.a(s), 1.0 - s);
    EXPECT_DOUBLE_EQ(f.b(s), s);
  }
}

TEST(AnnealFunctions, LoadedTable) {
  std::istringstream in("s,A,B\n0,2,0\n0.5,0.5,1\n1,0,3\n");
  const auto f = load_anneal_functions(in);
  EXPECT_EQ(f.a(0.5), 0.5);
  EXPECT_EQ(f.b(1.0), 3.0);
  EXPECT_DOUBLE_EQ(f.a(0.25), 2.0 + 0.5 * (0.5 - 2.0));
  EXPECT_DOUBLE_EQ(f.b(0.75), 1.0 + 0.5 * (3.0 - 1.0));
  EXPECT_EQ(f.b_max(), 3.0);
}

TEST(AnnealFunctions, MalformedTablesRejected) {
  std::istringstream bad_header("x,A,B\n0,1,0\n1,0,1\n");
  EXPECT_THROW(load_anneal_functions(bad_header), std::invalid_argument);
  std::istringstream bad_grid("s,A,B\n0,1,0\n0.9,0,1\n");
  EXPECT_THROW(load_anneal_functions(bad_grid), std::invalid_argument);
  std::istringstream bad_cell("s,A,B\n0,1,0\n1,zero,1\n");
  EXPECT_THROW(load_anneal_functions(bad_cell), std::invalid_argument);
  EXPECT_THROW(load_anneal_functions(std::string("/nonexistent/table.csv")), std::runtime_error);
}
