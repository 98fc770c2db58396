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

// freecomp: free components, overlaps, bounds and figure sweeps from the
// command line.
//
// Exit status: 0 ok, 1 parse error, 2 domain error, 3 solver failure.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "figures.hpp"
#include "freecomp/bounds.hpp"
#include "freecomp/channels.hpp"
#include "freecomp/errors.hpp"
#include "freecomp/free_sets.hpp"
#include "freecomp/matrix_io.hpp"

namespace fs = std::filesystem;
using namespace freecomp;
using nlohmann::json;

namespace {

bool is_file(const std::string &s) {
  std::error_code ec;
  return fs::is_regular_file(s, ec);
}

json read_json(const std::string &path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::exception &e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

DensityMatrix load_state(const std::string &spec) {
  if (is_file(spec)) {
    return DensityMatrix(read_hermitian_file(spec));
  }
  return make_named_state(spec);
}

Channel load_channel(const std::string &spec) {
  if (is_file(spec)) {
    return channel_from_json(read_json(spec));
  }
  return make_named_channel(spec);
}

// Pure targets are given like states; anything not rank one is refused.
PureState load_pure(const std::string &spec) {
  const DensityMatrix rho = load_state(spec);
  const Spectrum sp = eig_hermitian(rho.mat());
  std::size_t top = 0;
  for (std::size_t k = 1; k < sp.eigenvalues.size(); ++k) {
    if (sp.eigenvalues[k] > sp.eigenvalues[top]) {
      top = k;
    }
  }
  if (sp.eigenvalues[top] < 1.0 - 1e-9) {
    throw DomainError("target '" + spec + "' is not a pure state");
  }
  std::vector<Complex> v(rho.dim());
  for (std::size_t r = 0; r < v.size(); ++r) {
    v[r] = sp.eigenvectors(r, top);
  }
  return PureState::normalized(std::move(v));
}

void emit(const std::string &text, const std::string &out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    throw ParseError("cannot write '" + out + "'");
  }
  f << text;
}

std::string reports_text(const std::vector<BoundReport> &reports, const std::string &format) {
  if (format == "json") {
    json arr = json::array();
    for (const auto &r : reports) {
      arr.push_back(r.to_json());
    }
    return arr.dump(2) + "\n";
  }
  return bounds_csv(reports);
}

double ceil_count(const BoundReport &r) { return r.infinite ? INFINITY : std::ceil(r.value - 1e-12); }

struct Common {
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App *cmd, Common &c) {
  cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", c.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"freecomp: free components of quantum states and channels, and the bounds built on them"};
  app.require_subcommand(1);
  const SolverOptions opts = default_solver_options();

  // gamma
  Common gc;
  std::string g_set, g_state, g_channel;
  auto *gamma = app.add_subcommand("gamma", "free component of a state or channel");
  gamma->add_option("--free-set", g_set, "coherence:d, stab1q, clifford1q, gibbs:<file>:beta, ppt:din,dout, hull:<file>")
      ->required();
  auto *g_state_opt = gamma->add_option("--state", g_state, "named state or JSON matrix file");
  auto *g_chan_opt = gamma->add_option("--channel", g_channel, "named channel or JSON channel file");
  g_state_opt->excludes(g_chan_opt);
  add_common(gamma, gc);

  // overlap
  Common oc;
  std::string o_set, o_target, o_unitary;
  auto *overlap = app.add_subcommand("overlap", "maximum overlap of a pure target or unitary with a free set");
  overlap->add_option("--free-set", o_set, "free set")->required();
  auto *o_t = overlap->add_option("--target", o_target, "pure state (named or JSON file)");
  auto *o_u = overlap->add_option("--unitary", o_unitary, "unitary channel, e.g. unitary:t");
  o_t->excludes(o_u);
  add_common(overlap, oc);

  // bound
  Common bc;
  std::string b_name;
  std::map<std::string, double> b_params;
  auto *bound = app.add_subcommand("bound", "evaluate one bound formula");
  bound->add_option("name", b_name,
                    "state_error, distillation, magic, channel, simulation, qec, qec_independent, qec_copies, "
                    "capacity_uses, capacity_rate, gate_count, cv")
      ->required();
  for (const char *key : {"gamma", "f", "eps", "zeta", "m", "d", "n", "k", "r"}) {
    bound->add_option(std::string("--") + key, b_params[key]);
  }
  add_common(bound, bc);

  // figure
  std::string f_name, f_config, f_out, f_svg;
  auto *figure = app.add_subcommand("figure", "regenerate a figure sweep as CSV (and optionally SVG)");
  figure->add_option("name", f_name, "fig2a, fig2b, fig4a or fig4b")->required();
  figure->add_option("--config", f_config, "sweep grid JSON (defaults to the built-in grid)");
  figure->add_option("--out", f_out, "CSV output (default stdout)");
  figure->add_option("--svg", f_svg, "SVG output");

  // capacity
  Common cc;
  std::string c_channel, c_set;
  int c_k = 1;
  int c_n = 1;
  std::vector<double> c_eps;
  auto *capacity = app.add_subcommand("capacity", "channel uses and rate bounds from the PPT free component");
  capacity->add_option("--channel", c_channel, "channel")->required();
  capacity->add_option("--free-set", c_set, "free set (default ppt:d,d)");
  capacity->add_option("--k", c_k, "qubits to transmit");
  capacity->add_option("--n", c_n, "channel uses for the rate bound");
  capacity->add_option("--eps", c_eps, "Choi error values")->required();
  add_common(capacity, cc);

  // tcount
  Common tc;
  std::vector<double> t_mu, t_eps;
  double t_f = kCczOverlap;
  auto *tcount = app.add_subcommand("tcount", "noisy T gates needed for a target gate");
  tcount->add_option("--mu", t_mu, "depolarizing rates")->required();
  tcount->add_option("--eps", t_eps, "diamond-norm errors")->required();
  tcount->add_option("--f", t_f, "overlap of the target with the free channels (default 9/16, CCZ)");
  add_common(tcount, tc);

  // qec
  Common qc;
  std::string q_noise, q_set, q_logical_set, q_encoder;
  std::vector<std::string> q_states;
  int q_n = 1;
  double q_eps = -1.0;
  auto *qec = app.add_subcommand("qec", "error floor for recovering logical information from noisy systems");
  qec->add_option("--noise", q_noise, "noise channel on one physical system")->required();
  qec->add_option("--free-set", q_set, "free set of the physical side")->required();
  qec->add_option("--logical-free-set", q_logical_set, "free set for the logical overlap (default ppt:d,d)");
  qec->add_option("--state", q_states, "logical states (state form; repeatable)");
  qec->add_option("--encoder", q_encoder, "encoding channel applied before the noise (state form)");
  qec->add_option("--n", q_n, "independent noisy systems (channel form)");
  qec->add_option("--eps", q_eps, "target error for the copy bound (channel form)");
  add_common(qec, qc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*gamma) {
      if (g_state.empty() == g_channel.empty()) {
        throw ParseError("gamma: give exactly one of --state or --channel");
      }
      const FreeSetDescriptor f = parse_free_set(g_set);
      const GammaResult r =
          g_state.empty() ? free_component_channel(load_channel(g_channel), f, opts)
                          : free_component_state(load_state(g_state), f, opts);
      if (gc.format == "json") {
        json j{{"free_set", f.label()},
               {"gamma", r.gamma},
               {"weight", r.weight()},
               {"method", to_string(r.method)},
               {"solver_gap", r.solver_gap},
               {"support_contained", r.support_contained}};
        if (!r.vertex_weights.empty()) {
          j["vertex_weights"] = r.vertex_weights;
        }
        emit(j.dump(2) + "\n", gc.out);
      } else {
        emit(format_number(r.gamma) + "\n", gc.out);
      }
    } else if (*overlap) {
      if (o_target.empty() == o_unitary.empty()) {
        throw ParseError("overlap: give exactly one of --target or --unitary");
      }
      const FreeSetDescriptor f = parse_free_set(o_set);
      const double v = o_target.empty() ? max_overlap_choi_unitary(load_channel(o_unitary), f, opts)
                                        : max_overlap_pure(load_pure(o_target), f, opts);
      if (oc.format == "json") {
        emit(json{{"free_set", f.label()}, {"overlap", v}}.dump(2) + "\n", oc.out);
      } else {
        emit(format_number(v) + "\n", oc.out);
      }
    } else if (*bound) {
      auto need = [&](const char *key) {
        if (bound->get_option(std::string("--") + key)->count() == 0) {
          throw ParseError("bound " + b_name + ": --" + key + " is required");
        }
        return b_params.at(key);
      };
      auto as_int = [&](const char *key) {
        const double v = need(key);
        if (v != std::floor(v)) {
          throw ParseError(std::string("--") + key + " must be an integer");
        }
        return static_cast<int>(v);
      };
      std::vector<BoundReport> reports;
      if (b_name == "state_error") {
        reports.push_back(state_error_bound(need("gamma"), need("f")));
      } else if (b_name == "distillation") {
        reports.push_back(distillation_overhead(need("gamma"), need("f"), need("eps")));
      } else if (b_name == "magic") {
        reports.push_back(magic_overhead(need("zeta"), as_int("m"), need("eps")));
      } else if (b_name == "channel") {
        reports = channel_error_reports(need("gamma"), need("f"), as_int("d"));
      } else if (b_name == "simulation") {
        reports.push_back(simulation_cost(need("gamma"), need("f"), need("eps")));
      } else if (b_name == "qec") {
        reports.push_back(qec_error_bound(need("gamma"), need("f")));
      } else if (b_name == "qec_independent") {
        reports.push_back(qec_error_bound_independent(need("gamma"), as_int("n"), need("f")));
      } else if (b_name == "qec_copies") {
        reports.push_back(qec_copies(need("gamma"), need("f"), need("eps")));
      } else if (b_name == "capacity_uses") {
        reports.push_back(capacity_min_uses(need("gamma"), as_int("k"), need("eps")));
      } else if (b_name == "capacity_rate") {
        reports.push_back(capacity_rate_bound(need("gamma"), as_int("n"), need("eps")));
      } else if (b_name == "gate_count") {
        reports.push_back(noisy_gate_count(need("gamma"), need("f"), need("eps")));
      } else if (b_name == "cv") {
        reports.push_back(cv_error_bound(need("gamma"), need("r")));
      } else {
        throw ParseError("unknown bound '" + b_name + "'");
      }
      emit(reports_text(reports, bc.format), bc.out);
    } else if (*figure) {
      const json config = f_config.empty() ? json() : read_json(f_config);
      if (!config.is_null() && config.contains("figure") && config.at("figure") != f_name) {
        throw ParseError("config '" + f_config + "' is for figure " + config.at("figure").dump());
      }
      const cli::Figure fig = cli::make_figure(f_name, config, opts);
      emit(cli::table_csv(fig.table), f_out);
      if (!f_svg.empty()) {
        emit(cli::emit_svg(fig.series, fig.style), f_svg);
      }
    } else if (*capacity) {
      const Channel n = load_channel(c_channel);
      const std::string set_spec =
          c_set.empty() ? "ppt:" + std::to_string(n.dim_in()) + "," + std::to_string(n.dim_out()) : c_set;
      const GammaResult g = free_component_channel(n, parse_free_set(set_spec), opts);
      std::vector<BoundReport> reports;
      for (double e : c_eps) {
        reports.push_back(capacity_min_uses(g.gamma, c_k, e));
        reports.push_back(capacity_rate_bound(g.gamma, c_n, e));
      }
      emit(reports_text(reports, cc.format), cc.out);
    } else if (*tcount) {
      const auto cliff = FreeSetDescriptor::clifford_1q();
      const auto gam = cli::parallel_map<double>(t_mu.size(), [&](std::size_t i) {
        const Channel ch = compose(depolarizing(t_mu[i]), Channel::unitary(gate_matrix("t")));
        return free_component_channel(ch, cliff, opts).gamma;
      });
      if (tc.format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < t_mu.size(); ++i) {
          for (double e : t_eps) {
            BoundReport r = noisy_gate_count(gam[i], t_f, e);
            r.inputs["mu"] = t_mu[i];
            json j = r.to_json();
            j["gates"] = ceil_count(r);
            arr.push_back(j);
          }
        }
        emit(arr.dump(2) + "\n", tc.out);
      } else {
        std::ostringstream o;
        o << "mu,eps,gamma,bound,gates\n";
        for (std::size_t i = 0; i < t_mu.size(); ++i) {
          for (double e : t_eps) {
            const BoundReport r = noisy_gate_count(gam[i], t_f, e);
            o << format_number(t_mu[i]) << ',' << format_number(e) << ',' << format_number(gam[i]) << ','
              << format_number(r.value) << ',' << format_number(ceil_count(r)) << '\n';
          }
        }
        emit(o.str(), tc.out);
      }
    } else if (*qec) {
      const Channel noise = load_channel(q_noise);
      const FreeSetDescriptor phys = parse_free_set(q_set);
      std::vector<BoundReport> reports;
      if (!q_states.empty()) {
        // State form: each logical state is encoded, hit by the noise, and
        // must be recovered; the logical overlap is taken over the logical free set.
        const std::optional<Channel> enc =
            q_encoder.empty() ? std::nullopt : std::optional<Channel>(load_channel(q_encoder));
        double worst = 0.0;
        double sum = 0.0;
        for (const auto &spec : q_states) {
          const PureState psi = load_pure(spec);
          const std::string lspec = q_logical_set.empty() ? "coherence:" + std::to_string(psi.dim()) : q_logical_set;
          const double f = max_overlap_pure(psi, parse_free_set(lspec), opts);
          DensityMatrix phys_state(psi);
          if (enc) {
            phys_state = enc->apply(phys_state);
          }
          phys_state = noise.apply(phys_state);
          const double g = free_component_state(phys_state, phys, opts).gamma;
          BoundReport r = state_error_bound(g, f);
          r.name = "qec_state:" + spec;
          reports.push_back(r);
          worst = std::max(worst, r.value);
          sum += r.value;
        }
        BoundReport w;
        w.name = "qec_worst";
        w.value = worst;
        w.anchor = "max over the listed logical states of Gamma (1 - f)";
        BoundReport a;
        a.name = "qec_average";
        a.value = sum / static_cast<double>(q_states.size());
        a.anchor = "uniform mean over the listed logical states of Gamma (1 - f)";
        reports.push_back(w);
        reports.push_back(a);
      } else {
        const std::string lspec = q_logical_set.empty() ? "ppt:" + std::to_string(noise.dim_in()) + "," +
                                                              std::to_string(noise.dim_out())
                                                        : q_logical_set;
        const Channel id = Channel::identity(noise.dim_in());
        const double f = max_overlap_choi_unitary(id, parse_free_set(lspec), opts);
        const double g = free_component_channel(noise, phys, opts).gamma;
        reports.push_back(qec_error_bound(g, f));
        if (q_n > 1) {
          reports.push_back(qec_error_bound_independent(g, q_n, f));
        }
        if (q_eps > 0.0) {
          reports.push_back(qec_copies(g, f, q_eps));
        }
      }
      emit(reports_text(reports, qc.format), qc.out);
    }
  } catch (const ParseError &e) {
    std::cerr << "freecomp: " << e.what() << '\n';
    return 1;
  } catch (const DomainError &e) {
    std::cerr << "freecomp: " << e.what() << '\n';
    return 2;
  } catch (const SolverError &e) {
    std::cerr << "freecomp: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
