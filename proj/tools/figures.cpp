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

#include "figures.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "freecomp/bounds.hpp"
#include "freecomp/channels.hpp"
#include "freecomp/errors.hpp"
#include "freecomp/free_sets.hpp"

namespace freecomp::cli {

namespace {

double number_at(const nlohmann::json &doc, const char *key) {
  if (!doc.contains(key) || !doc.at(key).is_number()) {
    throw ParseError(std::string("grid: missing numeric '") + key + "'");
  }
  return doc.at(key).get<double>();
}

std::size_t count_at(const nlohmann::json &doc) {
  if (!doc.contains("count") || !doc.at("count").is_number_integer() || doc.at("count").get<long>() < 1) {
    throw ParseError("grid: 'count' must be a positive integer");
  }
  return doc.at("count").get<std::size_t>();
}

std::vector<double> linear(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = n == 1 ? a : a + static_cast<double>(i) * (b - a) / static_cast<double>(n - 1);
  }
  return out;
}

const nlohmann::json &section(const nlohmann::json &config, const char *key) {
  if (!config.is_object() || !config.contains(key)) {
    throw ParseError(std::string("figure config: missing grid '") + key + "'");
  }
  return config.at(key);
}

std::string fmt(double x, const char *spec = "%g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

std::string xml_escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Round steps of 1, 2 or 5 times a power of ten.
std::vector<double> linear_ticks(double lo, double hi) {
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) {
      break;
    }
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

Figure fig2(const std::string &name, const nlohmann::json &config, const SolverOptions &opts) {
  const bool amp = name == "fig2b";
  const char *key = amp ? "nu" : "mu";
  const std::vector<double> grid = grid_from_json(section(config, key));
  const auto coh2 = FreeSetDescriptor::coherence(2);
  // Target |+>: f = 1/2 over the diagonal states.
  const double f = max_overlap_pure(plus_state(), coh2);
  const auto rows = parallel_map<std::vector<double>>(grid.size(), [&](std::size_t i) {
    const double p = grid[i];
    const DensityMatrix rho = amp ? amp_damped_plus(p) : depolarized_plus(p);
    const double err = 1.0 - mio_optimal_fidelity(rho, 2, opts);
    const double g = free_component_state(rho, coh2, opts).gamma;
    return std::vector<double>{p, err, state_error_bound(g, f).value, min_eigenvalue_bound(rho, f).value};
  });
  Figure fig;
  fig.table.header = {key, "sdp_optimal_error", "gamma_bound", "lmin_bound"};
  fig.table.rows = rows;
  const char *labels[] = {"MIO optimum", "free component bound", "min-eigenvalue bound"};
  for (std::size_t c = 1; c <= 3; ++c) {
    Series s;
    s.label = labels[c - 1];
    for (const auto &r : rows) {
      s.x.push_back(r[0]);
      s.y.push_back(r[c]);
    }
    fig.series.push_back(std::move(s));
  }
  fig.style.title = amp ? "Amplitude-damped |+>: error bounds" : "Depolarized |+>: error bounds";
  fig.style.x_label = amp ? "nu" : "mu";
  fig.style.y_label = "error";
  return fig;
}

double noisy_t_gamma(double mu, const SolverOptions &opts) {
  const Channel n = compose(depolarizing(mu), Channel::unitary(gate_matrix("t")));
  return free_component_channel(n, FreeSetDescriptor::clifford_1q(), opts).gamma;
}

Figure fig4a(const nlohmann::json &config, const SolverOptions &opts) {
  const std::vector<double> grid = grid_from_json(section(config, "mu"));
  const auto gam = parallel_map<double>(grid.size(), [&](std::size_t i) { return noisy_t_gamma(grid[i], opts); });
  Figure fig;
  fig.table.header = {"mu", "gamma"};
  Series s{"Gamma of depolarized T", {}, {}};
  Series lower{"mu", {}, {}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    fig.table.rows.push_back({grid[i], gam[i]});
    s.x.push_back(grid[i]);
    s.y.push_back(gam[i]);
    lower.x.push_back(grid[i]);
    lower.y.push_back(grid[i]);
  }
  fig.series = {s, lower};
  fig.style = {"Free component of the noisy T gate", "mu", "Gamma", false};
  return fig;
}

Figure fig4b(const nlohmann::json &config, const SolverOptions &opts) {
  const std::vector<double> mus = grid_from_json(section(config, "mu"));
  const std::vector<double> eps = grid_from_json(section(config, "eps"));
  double f = kCczOverlap;
  if (config.contains("f")) {
    f = config.at("f").get<double>();
  }
  const auto gam = parallel_map<double>(mus.size(), [&](std::size_t i) { return noisy_t_gamma(mus[i], opts); });
  Figure fig;
  fig.table.header = {"eps"};
  for (double mu : mus) {
    fig.table.header.push_back("gates_mu_" + fmt(mu));
    fig.series.push_back({"mu = " + fmt(mu), {}, {}});
  }
  for (double e : eps) {
    std::vector<double> row{e};
    for (std::size_t j = 0; j < mus.size(); ++j) {
      const double v = noisy_gate_count(gam[j], f, e).value;
      row.push_back(v);
      fig.series[j].x.push_back(e);
      fig.series[j].y.push_back(v);
    }
    fig.table.rows.push_back(std::move(row));
  }
  fig.style = {"Noisy gates needed for CCZ", "eps", "gate count lower bound", true};
  return fig;
}

}  // namespace

std::vector<double> grid_from_json(const nlohmann::json &doc) {
  if (doc.is_array()) {
    std::vector<double> out;
    for (const auto &v : doc) {
      if (!v.is_number()) {
        throw ParseError("grid: values must be numbers");
      }
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (!doc.is_object()) {
    throw ParseError("grid: expected an object or an array");
  }
  if (doc.contains("values")) {
    return grid_from_json(doc.at("values"));
  }
  if (doc.contains("log10_start")) {
    std::vector<double> out = linear(number_at(doc, "log10_start"), number_at(doc, "log10_stop"), count_at(doc));
    for (double &x : out) {
      x = std::pow(10.0, x);
    }
    return out;
  }
  return linear(number_at(doc, "start"), number_at(doc, "stop"), count_at(doc));
}

std::string table_csv(const Table &t) {
  std::ostringstream out;
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    out << (c ? "," : "") << t.header[c];
  }
  out << '\n';
  for (const auto &row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c ? "," : "") << format_number(row[c]);
    }
    out << '\n';
  }
  return out.str();
}

std::string emit_svg(const std::vector<Series> &series, const PlotStyle &style) {
  constexpr double kW = 640, kH = 480, kLeft = 72, kRight = 24, kTop = 40, kBottom = 56;
  bool any = false;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto &s : series) {
    if (s.x.size() != s.y.size()) {
      throw DomainError("svg: series '" + s.label + "' has mismatched x and y");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = style.log_x ? std::log10(s.x[i]) : s.x[i];
      if (!std::isfinite(x) || !std::isfinite(s.y[i])) {
        throw DomainError("svg: series '" + s.label + "' has non-finite data");
      }
      any = true;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!any) {
    throw DomainError("svg: nothing to plot");
  }
  if (x1 - x0 < 1e-12) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 0.5;
    y1 += 0.5;
  } else {
    const double pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
  }
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };
  static const char *palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  o << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  o << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
    << xml_escape(style.title) << "</text>\n";
  o << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  std::vector<double> xt;
  if (style.log_x) {
    for (double d = std::ceil(x0 - 1e-9); d <= x1 + 1e-9; d += 1.0) {
      xt.push_back(d);
    }
  } else {
    xt = linear_ticks(x0, x1);
  }
  for (double t : xt) {
    const std::string label = style.log_x ? "1e" + fmt(t) : fmt(t);
    o << "<line x1=\"" << fmt(px(t), "%.2f") << "\" y1=\"" << kTop + ph << "\" x2=\"" << fmt(px(t), "%.2f")
      << "\" y2=\"" << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt(px(t), "%.2f") << "\" y=\"" << kTop + ph + 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label << "</text>\n";
  }
  for (double t : linear_ticks(y0, y1)) {
    o << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << fmt(py(t), "%.2f") << "\" x2=\"" << kLeft << "\" y2=\""
      << fmt(py(t), "%.2f") << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(py(t) + 4, "%.2f")
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(t) << "</text>\n";
  }
  o << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 14
    << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(style.x_label)
    << "</text>\n";
  o << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
    << "font-size=\"13\" transform=\"rotate(-90 18 " << kTop + ph / 2 << ")\">" << xml_escape(style.y_label)
    << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto &s = series[k];
    const char *color = palette[k % 6];
    if (s.x.size() == 1) {
      const double x = style.log_x ? std::log10(s.x[0]) : s.x[0];
      o << "<circle cx=\"" << fmt(px(x), "%.2f") << "\" cy=\"" << fmt(py(s.y[0]), "%.2f") << "\" r=\"3\" fill=\""
        << color << "\"/>\n";
      continue;
    }
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double x = style.log_x ? std::log10(s.x[i]) : s.x[i];
      o << (i ? " " : "") << fmt(px(x), "%.2f") << "," << fmt(py(s.y[i]), "%.2f");
    }
    o << "\"/>\n";
  }

  // Legend in whichever top corner covers fewer data points.
  const double lh = 18.0 * static_cast<double>(series.size()) + 8;
  const double ly = kTop + 10;
  auto covered = [&](double left) {
    int hits = 0;
    for (const auto &s : series) {
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        const double x = px(style.log_x ? std::log10(s.x[i]) : s.x[i]);
        const double y = py(s.y[i]);
        hits += (x >= left && x <= left + 180 && y >= ly && y <= ly + lh) ? 1 : 0;
      }
    }
    return hits;
  };
  const double right = kLeft + pw - 190, left = kLeft + 10;
  const double lx = covered(left) < covered(right) ? left : right;
  o << "<rect x=\"" << lx << "\" y=\"" << ly << "\" width=\"180\" height=\"" << lh
    << "\" fill=\"white\" stroke=\"#999\"/>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const double yy = ly + 16 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << lx + 8 << "\" y1=\"" << yy - 4 << "\" x2=\"" << lx + 30 << "\" y2=\"" << yy - 4
      << "\" stroke=\"" << palette[k % 6] << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << lx + 36 << "\" y=\"" << yy << "\" font-family=\"sans-serif\" font-size=\"11\">"
      << xml_escape(series[k].label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

nlohmann::json default_figure_config(const std::string &name) {
  if (name == "fig2a") {
    return {{"figure", "fig2a"}, {"mu", {{"start", 0.02}, {"stop", 1.0}, {"count", 50}}}};
  }
  if (name == "fig2b") {
    return {{"figure", "fig2b"}, {"nu", {{"start", 0.01}, {"stop", 0.99}, {"count", 50}}}};
  }
  if (name == "fig4a") {
    return {{"figure", "fig4a"}, {"mu", {{"start", 0.0}, {"stop", 0.5}, {"count", 101}}}};
  }
  if (name == "fig4b") {
    return {{"figure", "fig4b"},
            {"mu", {{"values", {0.1, 0.2, 0.3, 0.4}}}},
            {"eps", {{"log10_start", -10.0}, {"log10_stop", -1.0}, {"count", 37}}},
            {"f", kCczOverlap}};
  }
  throw ParseError("unknown figure '" + name + "' (expected fig2a, fig2b, fig4a or fig4b)");
}

Figure make_figure(const std::string &name, const nlohmann::json &config, const SolverOptions &opts) {
  const nlohmann::json cfg = config.is_null() ? default_figure_config(name) : config;
  if (name == "fig2a" || name == "fig2b") {
    return fig2(name, cfg, opts);
  }
  if (name == "fig4a") {
    return fig4a(cfg, opts);
  }
  if (name == "fig4b") {
    return fig4b(cfg, opts);
  }
  throw ParseError("unknown figure '" + name + "' (expected fig2a, fig2b, fig4a or fig4b)");
}

}  // namespace freecomp::cli
