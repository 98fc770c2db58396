// Copyright 2026 The freecomp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Sweep grids, tables and SVG output shared by the command-line tool and the
// acceptance checks.

#ifndef FREECOMP_TOOLS_FIGURES_HPP
#define FREECOMP_TOOLS_FIGURES_HPP

#include <cstddef>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "freecomp/sdp.hpp"

namespace freecomp::cli {

/// {"values": [...]}, {"start", "stop", "count"} or
/// {"log10_start", "log10_stop", "count"}.
std::vector<double> grid_from_json(const nlohmann::json &doc);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

std::string table_csv(const Table &t);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotStyle {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
};

/// 640x480 self-contained SVG with one polyline per series (a marker for
/// single points) and a legend.
std::string emit_svg(const std::vector<Series> &series, const PlotStyle &style);

/// Runs fn(0..n-1) on a small thread pool and returns results in index order.
/// The first exception by index is rethrown after all workers finish.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)> &fn);

struct Figure {
  Table table;
  std::vector<Series> series;
  PlotStyle style;
};

/// Known names: fig2a, fig2b, fig4a, fig4b. `config` may be null, in which
/// case the default grid (identical to configs/<name>.json) is used.
Figure make_figure(const std::string &name, const nlohmann::json &config, const SolverOptions &opts);
nlohmann::json default_figure_config(const std::string &name);

}  // namespace freecomp::cli

#include "figures_impl.hpp"

#endif  // FREECOMP_TOOLS_FIGURES_HPP
