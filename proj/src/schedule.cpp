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

#include "pathlab/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace pathlab {

AnnealFunctions AnnealFunctions::linear(double a_max, double b_max) {
  return AnnealFunctions(Eigen::Vector2d(0.0, 1.0), Eigen::Vector2d(a_max, 0.0), Eigen::Vector2d(0.0, b_max));
}

AnnealFunctions::AnnealFunctions(Eigen::VectorXd s, Eigen::VectorXd a, Eigen::VectorXd b)
    : s_(std::move(s)), a_(std::move(a)), b_(std::move(b)) {
  const Eigen::Index m = s_.size();
  if (m < 2 || a_.size() != m || b_.size() != m) {
    throw std::invalid_argument("anneal functions need at least two grid points and matching columns");
  }
  if (!s_.allFinite() || !a_.allFinite() || !b_.allFinite()) {
    throw std::invalid_argument("anneal functions contain non-finite values");
  }
  if (s_(0) != 0.0 || s_(m - 1) != 1.0) throw std::invalid_argument("anneal function grid must cover [0, 1]");
  for (Eigen::Index k = 1; k < m; ++k) {
    if (!(s_(k) > s_(k - 1))) throw std::invalid_argument("anneal function grid is not strictly increasing");
    if (a_(k) > a_(k - 1)) throw std::invalid_argument("A(s) must be non-increasing");
    if (b_(k) < b_(k - 1)) throw std::invalid_argument("B(s) must be non-decreasing");
  }
  if (a_.minCoeff() < 0.0) throw std::invalid_argument("A(s) must be non-negative");
  if (b_(0) < 0.0) throw std::invalid_argument("B(0) must be non-negative");
}

double AnnealFunctions::interpolate(const Eigen::VectorXd& values, double s) const {
  if (!(s >= 0.0 && s <= 1.0)) throw std::out_of_range("anneal fraction outside [0, 1]");
  const double* begin = s_.data();
  const double* end = begin + s_.size();
  auto it = std::upper_bound(begin, end, s);
  if (it == end) return values(s_.size() - 1);
  const Eigen::Index k = it - begin - 1;
  if (s == s_(k)) return values(k);
  const double f = (s - s_(k)) / (s_(k + 1) - s_(k));
  return values(k) + f * (values(k + 1) - values(k));
}

double AnnealFunctions::a(double s) const { return interpolate(a_, s); }
double AnnealFunctions::b(double s) const { return interpolate(b_, s); }

AnnealFunctions load_anneal_functions(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("anneal function table is empty");
  line.erase(std::remove_if(line.begin(), line.end(), [](char c) { return c == ' ' || c == '\r'; }), line.end());
  if (line != "s,A,B") throw std::invalid_argument("anneal function table must start with header 's,A,B'");

  std::vector<double> s, a, b;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::stringstream ss(line);
    std::string cell;
    double values[3];
    for (int c = 0; c < 3; ++c) {
      if (!std::getline(ss, cell, ',')) throw std::invalid_argument("row " + std::to_string(row) + " has fewer than 3 columns");
      try {
        std::size_t used = 0;
        values[c] = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("row " + std::to_string(row) + " has a non-numeric cell '" + cell + "'");
      }
    }
    s.push_back(values[0]);
    a.push_back(values[1]);
    b.push_back(values[2]);
  }
  auto to_vec = [](const std::vector<double>& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()).eval(); };
  return AnnealFunctions(to_vec(s), to_vec(a), to_vec(b));
}

AnnealFunctions load_anneal_functions(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open anneal function table '" + path + "'");
  return load_anneal_functions(in);
}

const char* to_string(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Range: return "range";
    case Violation::Kind::TimeOrder: return "time-order";
    case Violation::Kind::Endpoint: return "endpoint";
    case Violation::Kind::PointCount: return "point-count";
    case Violation::Kind::Slope: return "slope";
  }
  return "unknown";
}

namespace {

void check_times(const std::vector<PathPoint>& pts, std::vector<Violation>& out) {
  if (pts.size() < 2) {
    out.push_back({Violation::Kind::PointCount, 0, "a path needs at least two points"});
    return;
  }
  if (pts.front().t != 0.0) out.push_back({Violation::Kind::Endpoint, 0, "first point must be at t = 0"});
  if (!(pts.back().t > 0.0)) out.push_back({Violation::Kind::Endpoint, pts.size() - 1, "duration must be positive"});
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (!std::isfinite(pts[k].t) || !std::isfinite(pts[k].value)) {
      out.push_back({Violation::Kind::Range, k, "non-finite point"});
    }
    if (k > 0 && !(pts[k].t > pts[k - 1].t)) {
      out.push_back({Violation::Kind::TimeOrder, k - 1, "time is not strictly increasing"});
    }
  }
}

}  // namespace

std::vector<Violation> validate(const AnnealPath& path) {
  std::vector<Violation> out;
  check_times(path.points, out);
  for (std::size_t k = 0; k < path.points.size(); ++k) {
    const double s = path.points[k].value;
    if (!(s >= 0.0 && s <= 1.0)) out.push_back({Violation::Kind::Range, k, "anneal fraction outside [0, 1]"});
  }
  return out;
}

std::vector<Violation> validate(const HGainPath& path, const GainLimits& limits) {
  std::vector<Violation> out;
  const auto& pts = path.points;
  if (pts.size() > limits.max_points) {
    out.push_back({Violation::Kind::PointCount, pts.size(),
                   std::to_string(pts.size()) + " points exceed the limit of " + std::to_string(limits.max_points)});
  }
  check_times(pts, out);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    const double g = pts[k].value;
    if (!(g >= limits.min_gain && g <= limits.max_gain)) {
      out.push_back({Violation::Kind::Range, k, "gain " + std::to_string(g) + " outside the allowed range"});
    }
  }
  const double T = path.duration();
  if (T > 0.0) {
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
      const double dt = (pts[k + 1].t - pts[k].t) / T;
      if (!(dt > 0.0)) continue;
      const double slope = std::abs(pts[k + 1].value - pts[k].value) / dt;
      // Tolerance keeps a slope of exactly the limit from tripping on rounding.
      if (slope > limits.max_slope * (1.0 + 1e-12)) {
        out.push_back({Violation::Kind::Slope, k,
                       "slope " + std::to_string(slope) + " exceeds " + std::to_string(limits.max_slope)});
      }
    }
  }
  return out;
}

namespace {

template <class Path>
Path checked(Path path, const std::vector<Violation>& violations) {
  if (!violations.empty()) {
    std::string msg = "invalid schedule:";
    for (const auto& v : violations) msg += std::string(" [") + to_string(v.kind) + "] " + v.detail + ";";
    throw std::invalid_argument(msg);
  }
  return path;
}

}  // namespace

AnnealPath forward_path(double T) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("anneal time must be positive");
  AnnealPath p{{{0.0, 0.0}, {T, 1.0}}};
  return checked(p, validate(p));
}

AnnealPath reverse_path(double T, double t_a, double t_b, double s_inv) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("anneal time must be positive");
  if (!(t_a > 0.0 && t_a <= t_b && t_b < T)) {
    throw std::invalid_argument("reverse path needs 0 < t_a <= t_b < T");
  }
  if (!(s_inv >= 0.0 && s_inv < 1.0)) throw std::invalid_argument("reverse path needs 0 <= s_inv < 1");
  AnnealPath p;
  p.points.push_back({0.0, 1.0});
  p.points.push_back({t_a, s_inv});
  if (t_b > t_a) p.points.push_back({t_b, s_inv});
  p.points.push_back({T, 1.0});
  return checked(p, validate(p));
}

HGainPath hgain_path(double T, double t_mid, double g_mid, double g0, const GainLimits& limits) {
  if (!(T > 0.0) || !std::isfinite(T)) throw std::invalid_argument("anneal time must be positive");
  if (!(t_mid > 0.0 && t_mid < 1.0)) throw std::invalid_argument("gain midpoint position must lie in (0, 1)");
  if (!(g_mid >= 0.0 && g_mid <= 5.0)) throw std::invalid_argument("gain midpoint value must lie in [0, 5]");
  HGainPath p{{{0.0, g0}, {t_mid * T, g_mid}, {T, 0.0}}};
  return checked(p, validate(p, limits));
}

double eval_path(const std::vector<PathPoint>& pts, double t) {
  if (pts.empty()) throw std::invalid_argument("cannot evaluate an empty path");
  if (!(t >= pts.front().t && t <= pts.back().t)) {
    throw std::out_of_range("time " + std::to_string(t) + " outside the path's [0, T]");
  }
  auto it = std::upper_bound(pts.begin(), pts.end(), t, [](double x, const PathPoint& p) { return x < p.t; });
  if (it == pts.end()) return pts.back().value;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  if (t == lo.t) return lo.value;
  const double f = (t - lo.t) / (hi.t - lo.t);
  return lo.value + f * (hi.value - lo.value);
}

SchedulePlan make_plan(AnnealPath anneal, std::optional<HGainPath> hgain, AnnealFunctions functions,
                       bool reinitialize) {
  checked(anneal, validate(anneal));
  if (hgain) {
    checked(*hgain, validate(*hgain));
    if (hgain->duration() != anneal.duration()) {
      throw std::invalid_argument("anneal and gain paths have different durations");
    }
  }
  return SchedulePlan{std::move(anneal), std::move(hgain), std::move(functions), reinitialize};
}

double effective_gain(const SchedulePlan& plan, double t, bool normalize_b) {
  if (!plan.hgain) throw std::invalid_argument("plan has no gain path");
  double b = plan.functions.b(plan.s_at(t));
  if (normalize_b) {
    const double b_max = plan.functions.b_max();
    if (b_max > 0.0) b /= b_max;
  }
  return b * eval_path(*plan.hgain, t) / 2.0;
}

}  // namespace pathlab
