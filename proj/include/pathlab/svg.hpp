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

#include <string>
#include <vector>

#include "pathlab/bayesopt.hpp"

namespace pathlab {

struct Series {
  std::string name;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Polyline chart with linear axes and a legend.
std::string line_plot_svg(const std::vector<Series>& series, const std::string& title, const std::string& x_label,
                          const std::string& y_label);

enum class HeatmapLayer { Mean, Variance };

/// Grid of colored cells, low values blue and high values red. Optional
/// evaluation points are drawn as dots.
std::string heatmap_svg(const Heatmap& h, HeatmapLayer layer, const std::string& title,
                        const std::vector<Observation>& points = {});

}  // namespace pathlab
