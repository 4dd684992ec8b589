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

#include <cstddef>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace pathlab {

/// Transverse-field and problem energy envelopes A(s), B(s), sampled on a
/// grid over [0, 1] and interpolated piecewise linearly.
class AnnealFunctions {
 public:
  /// A(s) = a_max (1 - s), B(s) = b_max s.
  static AnnealFunctions linear(double a_max = 1.0, double b_max = 1.0);

  /// Throws std::invalid_argument unless the grid is strictly increasing from
  /// 0 to 1, A is non-increasing and non-negative, B is non-decreasing with
  /// B(0) >= 0 and every value is finite.
  AnnealFunctions(Eigen::VectorXd s, Eigen::VectorXd a, Eigen::VectorXd b);

  double a(double s) const;
  double b(double s) const;
  double b_max() const { return b_.maxCoeff(); }

  const Eigen::VectorXd& grid() const { return s_; }
  const Eigen::VectorXd& a_values() const { return a_; }
  const Eigen::VectorXd& b_values() const { return b_; }

 private:
  double interpolate(const Eigen::VectorXd& values, double s) const;

  Eigen::VectorXd s_, a_, b_;
};

/// Reads a CSV with header "s,A,B". Throws on malformed rows or a grid that
/// fails AnnealFunctions validation.
AnnealFunctions load_anneal_functions(std::istream& in);
AnnealFunctions load_anneal_functions(const std::string& path);
/// The default envelopes when no table is supplied.
inline AnnealFunctions default_anneal_functions() { return AnnealFunctions::linear(); }

struct PathPoint {
  double t = 0.0;
  double value = 0.0;

  friend bool operator==(const PathPoint&, const PathPoint&) = default;
};

/// Anneal fraction s(t) as a polyline.
struct AnnealPath {
  std::vector<PathPoint> points;

  double duration() const { return points.empty() ? 0.0 : points.back().t; }
  friend bool operator==(const AnnealPath&, const AnnealPath&) = default;
};

/// Linear-bias gain g(t) as a polyline.
struct HGainPath {
  std::vector<PathPoint> points;

  double duration() const { return points.empty() ? 0.0 : points.back().t; }
  friend bool operator==(const HGainPath&, const HGainPath&) = default;
};

/// Machine limits applied to gain paths. The slope is measured in gain units
/// per unit of normalized time t / T.
struct GainLimits {
  double min_gain = -5.0;
  double max_gain = 5.0;
  std::size_t max_points = 20;
  double max_slope = 500.0;
};

struct Violation {
  enum class Kind { Range, TimeOrder, Endpoint, PointCount, Slope };
  Kind kind;
  /// Offending point or segment (segment k joins points k and k+1).
  std::size_t index = 0;
  std::string detail;
};

const char* to_string(Violation::Kind k);

std::vector<Violation> validate(const AnnealPath& path);
std::vector<Violation> validate(const HGainPath& path, const GainLimits& limits = {});

/// s(t) = t / T.
AnnealPath forward_path(double T);

/// (0, 1) -> (t_a, s_inv) -> (t_b, s_inv) -> (T, 1). The pause point is merged
/// when t_a == t_b. Requires 0 < t_a <= t_b < T and 0 <= s_inv < 1.
AnnealPath reverse_path(double T, double t_a, double t_b, double s_inv);

/// (0, g0) -> (t_mid T, g_mid) -> (T, 0), with t_mid in (0, 1) and g_mid in
/// [0, 5]. Throws when the result violates `limits`.
HGainPath hgain_path(double T, double t_mid, double g_mid, double g0 = 5.0, const GainLimits& limits = {});

/// Piecewise-linear interpolation, exact at knots. Throws std::out_of_range
/// for t outside [0, T].
double eval_path(const std::vector<PathPoint>& points, double t);
inline double eval_path(const AnnealPath& p, double t) { return eval_path(p.points, t); }
inline double eval_path(const HGainPath& p, double t) { return eval_path(p.points, t); }

/// A complete anneal request: the s(t) path, an optional gain path over the
/// same duration and the energy envelopes.
struct SchedulePlan {
  AnnealPath anneal;
  std::optional<HGainPath> hgain;
  AnnealFunctions functions = default_anneal_functions();
  bool reinitialize = true;

  double duration() const { return anneal.duration(); }
  /// Plans that start away from s = 0 begin in a classical basis state and
  /// need an initial configuration.
  bool needs_initial_state() const { return !anneal.points.empty() && anneal.points.front().value > 0.0; }
  double s_at(double t) const { return eval_path(anneal, t); }
  /// g(t), or 1 when the plan has no gain path.
  double gain_at(double t) const { return hgain ? eval_path(*hgain, t) : 1.0; }
};

/// Validates both paths and checks that they share the same duration.
SchedulePlan make_plan(AnnealPath anneal, std::optional<HGainPath> hgain = std::nullopt,
                       AnnealFunctions functions = default_anneal_functions(), bool reinitialize = true);

/// B(s(t)) g(t) / 2, with B divided by its maximum when `normalize_b` is set.
double effective_gain(const SchedulePlan& plan, double t, bool normalize_b = false);

}  // namespace pathlab
