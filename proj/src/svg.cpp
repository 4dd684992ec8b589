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

#include "pathlab/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace pathlab {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0, hi = 1;
    if (lo == hi) lo -= 0.5, hi += 0.5;
  }
  double frac(double v) const { return (v - lo) / (hi - lo); }
};

const std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

void header(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
}

void axes(std::ostringstream& os, const Range& xr, const Range& yr, const std::string& xl, const std::string& yl) {
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = k / 4.0;
    const double x = kLeft + fx * pw, y = kTop + ph - fx * ph;
    os << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\" font-size=\"11\">"
       << tick(xr.lo + fx * (xr.hi - xr.lo)) << "</text>\n";
    os << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\" font-size=\"11\">"
       << tick(yr.lo + fx * (yr.hi - yr.lo)) << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12)
     << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(xl) << "</text>\n";
  os << "<text x=\"16\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
     << num(kTop + ph / 2) << ")\">" << escape(yl) << "</text>\n";
}

// Diverging blue-white-red map on t in [0, 1].
std::string color(double t) {
  t = std::clamp(std::isfinite(t) ? t : 0.0, 0.0, 1.0);
  int r, g, b;
  if (t < 0.5) {
    const double u = t / 0.5;
    r = static_cast<int>(59 + u * (255 - 59));
    g = static_cast<int>(76 + u * (255 - 76));
    b = static_cast<int>(192 + u * (255 - 192));
  } else {
    const double u = (t - 0.5) / 0.5;
    r = static_cast<int>(255 + u * (180 - 255));
    g = static_cast<int>(255 + u * (4 - 255));
    b = static_cast<int>(255 + u * (38 - 255));
  }
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string line_plot_svg(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                          const std::string& y_label) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double x : s.xs) xr.add(x);
    for (double y : s.ys) yr.add(y);
  }
  xr.finish();
  yr.finish();
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;

  std::ostringstream os;
  header(os, title);
  axes(os, xr, yr, x_label, y_label);
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* c = kPalette[k % kPalette.size()];
    os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.xs.size(), s.ys.size()); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      os << num(kLeft + xr.frac(s.xs[i]) * pw) << ',' << num(kTop + ph - yr.frac(s.ys[i]) * ph) << ' ';
    }
    os << "\"/>\n";
    const double ly = kTop + 14 + 18 * static_cast<double>(k);
    os << "<line x1=\"" << num(kWidth - kRight + 10) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(kWidth - kRight + 30)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << c << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(kWidth - kRight + 35) << "\" y=\"" << num(ly + 4) << "\" font-size=\"11\">"
       << escape(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string heatmap_svg(const Heatmap& h, HeatmapLayer layer, const std::string& title,
                        const std::vector<Observation>& points) {
  const Eigen::MatrixXd& values = layer == HeatmapLayer::Mean ? h.mean : h.variance;
  Range xr, yr, vr;
  for (Eigen::Index i = 0; i < h.xs.size(); ++i) xr.add(h.xs(i));
  for (Eigen::Index j = 0; j < h.ys.size(); ++j) yr.add(h.ys(j));
  for (Eigen::Index i = 0; i < values.size(); ++i) vr.add(values.data()[i]);
  xr.finish();
  yr.finish();
  vr.finish();
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const double cw = pw / std::max<Eigen::Index>(1, h.xs.size());
  const double ch = ph / std::max<Eigen::Index>(1, h.ys.size());

  std::ostringstream os;
  header(os, title);
  for (Eigen::Index i = 0; i < h.xs.size(); ++i) {
    for (Eigen::Index j = 0; j < h.ys.size(); ++j) {
      os << "<rect x=\"" << num(kLeft + cw * i) << "\" y=\"" << num(kTop + ph - ch * (j + 1)) << "\" width=\""
         << num(cw + 0.3) << "\" height=\"" << num(ch + 0.3) << "\" fill=\"" << color(vr.frac(values(i, j)))
         << "\"/>\n";
    }
  }
  axes(os, xr, yr, h.name_x, h.name_y);
  for (const auto& p : points) {
    if (p.point.size() <= std::max(h.dim_x, h.dim_y)) continue;
    os << "<circle cx=\"" << num(kLeft + xr.frac(p.point(h.dim_x)) * pw) << "\" cy=\""
       << num(kTop + ph - yr.frac(p.point(h.dim_y)) * ph) << "\" r=\"1.5\" fill=\"black\"/>\n";
  }
  // Color bar.
  for (int k = 0; k < 50; ++k) {
    os << "<rect x=\"" << num(kWidth - kRight + 20) << "\" y=\"" << num(kTop + ph - (k + 1) * ph / 50)
       << "\" width=\"16\" height=\"" << num(ph / 50 + 0.3) << "\" fill=\"" << color(k / 49.0) << "\"/>\n";
  }
  os << "<text x=\"" << num(kWidth - kRight + 42) << "\" y=\"" << num(kTop + 10) << "\" font-size=\"11\">"
     << tick(vr.hi) << "</text>\n";
  os << "<text x=\"" << num(kWidth - kRight + 42) << "\" y=\"" << num(kTop + ph) << "\" font-size=\"11\">"
     << tick(vr.lo) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace pathlab
