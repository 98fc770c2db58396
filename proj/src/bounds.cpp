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

#include "freecomp/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <set>

#include "freecomp/errors.hpp"
#include "freecomp/free_sets.hpp"

namespace freecomp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_unit(double x, const char *name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1]");
  }
}

void require_positive(double x, const char *name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(name) + " must be positive and finite");
  }
}

// n >= log(a/eps) / log(1/gamma), shared by every copy-count bound.
BoundReport copies(std::string name, double gamma, double one_minus_f, double eps, std::string anchor) {
  require_unit(gamma, "gamma");
  require_unit(one_minus_f, "1 - f");
  require_positive(eps, "eps");
  BoundReport r;
  r.name = std::move(name);
  r.kind = BoundKind::CopyLowerBound;
  r.anchor = std::move(anchor);
  if (eps >= one_minus_f) {
    r.value = 0.0;
  } else if (gamma >= 1.0) {
    r.value = kInf;
    r.infinite = true;
  } else if (gamma <= 0.0) {
    r.value = 0.0;
  } else {
    r.value = std::log(one_minus_f / eps) / std::log(1.0 / gamma);
  }
  return r;
}

}  // namespace

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::ErrorLowerBound:
      return "error_lower_bound";
    case BoundKind::CopyLowerBound:
      return "copy_lower_bound";
    case BoundKind::RateUpperBound:
      return "rate_upper_bound";
  }
  return "unknown";
}

std::string format_number(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  if (std::isinf(x)) {
    return x > 0 ? "inf" : "-inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

nlohmann::json BoundReport::to_json() const {
  nlohmann::json in = nlohmann::json::object();
  for (const auto &[k, v] : inputs) {
    in[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_number(v));
  }
  nlohmann::json val = std::isfinite(value) ? nlohmann::json(value) : nlohmann::json(nullptr);
  return {{"name", name},         {"value", val},   {"infinite", infinite}, {"applicable", applicable},
          {"inputs", in},         {"anchor", anchor}, {"kind", to_string(kind)}};
}

std::string bounds_csv(const std::vector<BoundReport> &reports) {
  std::set<std::string> keys;
  for (const auto &r : reports) {
    for (const auto &kv : r.inputs) {
      keys.insert(kv.first);
    }
  }
  std::string out = "name,value,infinite,applicable";
  for (const auto &k : keys) {
    out += "," + k;
  }
  out += "\n";
  for (const auto &r : reports) {
    out += r.name + "," + format_number(r.value) + "," + (r.infinite ? "1" : "0") + "," + (r.applicable ? "1" : "0");
    for (const auto &k : keys) {
      const auto it = r.inputs.find(k);
      out += ",";
      if (it != r.inputs.end()) {
        out += format_number(it->second);
      }
    }
    out += "\n";
  }
  return out;
}

BoundReport state_error_bound(double gamma, double f) {
  require_unit(gamma, "gamma");
  require_unit(f, "f");
  BoundReport r;
  r.name = "state_error";
  r.value = gamma * (1.0 - f);
  r.inputs = {{"gamma", gamma}, {"f", f}};
  r.anchor = "eps >= Gamma (1 - f)";
  return r;
}

BoundReport distillation_overhead(double gamma, double f, double eps) {
  require_unit(f, "f");
  BoundReport r = copies("distillation_overhead", gamma, 1.0 - f, eps, "n >= log((1-f)/eps) / log(1/Gamma)");
  r.inputs = {{"gamma", gamma}, {"f", f}, {"eps", eps}};
  return r;
}

BoundReport magic_overhead(double zeta, int m, double eps) {
  const double edge = 1.0 - 1.0 / std::numbers::sqrt2;
  if (!(zeta > 0.0 && zeta < edge)) {
    throw DomainError("zeta must lie in (0, 1 - 1/sqrt(2))");
  }
  if (m < 1) {
    throw DomainError("m must be at least 1");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError("eps must lie in (0, 1)");
  }
  const double c = std::pow(4.0 - 2.0 * std::numbers::sqrt2, m);
  BoundReport r;
  r.name = "magic_overhead";
  r.kind = BoundKind::CopyLowerBound;
  r.inputs = {{"zeta", zeta}, {"m", static_cast<double>(m)}, {"eps", eps}};
  r.anchor =
      "n >= log(((4-2sqrt2)^m - 1)/((4-2sqrt2)^m m eps)) / log((2-sqrt2)/(2 zeta)); "
      "Gamma >= (2+sqrt2) zeta, f = (4-2sqrt2)^-m, target error m eps by the union bound";
  const double num = std::log((c - 1.0) / (c * static_cast<double>(m) * eps));
  const double den = std::log((2.0 - std::numbers::sqrt2) / (2.0 * zeta));
  r.value = num <= 0.0 ? 0.0 : num / den;
  return r;
}

ChannelErrorBounds channel_error_bounds(double gamma, double f_cho, int d) {
  require_unit(gamma, "gamma");
  require_unit(f_cho, "f_cho");
  if (d < 1) {
    throw DomainError("d must be positive");
  }
  const double base = gamma * (1.0 - f_cho);
  const double dd = static_cast<double>(d);
  return {base, base, base, dd / (dd + 1.0) * base};
}

std::vector<BoundReport> channel_error_reports(double gamma, double f_cho, int d) {
  const ChannelErrorBounds b = channel_error_bounds(gamma, f_cho, d);
  const std::map<std::string, double> in{{"gamma", gamma}, {"f_cho", f_cho}, {"d", static_cast<double>(d)}};
  auto make = [&](const char *name, double v, const char *anchor) {
    BoundReport r;
    r.name = name;
    r.value = v;
    r.inputs = in;
    r.anchor = anchor;
    return r;
  };
  return {make("channel_error_diamond", b.diamond, "eps_diamond >= eps_wst >= eps_cho >= Gamma (1 - f_cho)"),
          make("channel_error_worst", b.worst, "eps_wst >= eps_cho >= Gamma (1 - f_cho)"),
          make("channel_error_choi", b.choi, "eps_cho >= Gamma (1 - f_cho)"),
          make("channel_error_average", b.average, "eps_ave = d/(d+1) eps_cho >= d/(d+1) Gamma (1 - f_cho)")};
}

BoundReport simulation_cost(double gamma, double f_cho, double eps) {
  require_unit(f_cho, "f_cho");
  BoundReport r = copies("simulation_cost", gamma, 1.0 - f_cho, eps,
                         "n >= log((1-f_cho)/eps) / log(1/Gamma_N); parallel and adaptive");
  r.inputs = {{"gamma", gamma}, {"f_cho", f_cho}, {"eps", eps}};
  return r;
}

BoundReport qec_error_bound(double gamma_ns, double f_id_cho) {
  BoundReport r = state_error_bound(gamma_ns, f_id_cho);
  r.name = "qec_error";
  r.inputs = {{"gamma", gamma_ns}, {"f_id_cho", f_id_cho}};
  r.anchor = "eps_x(N_S -> id_L) >= Gamma_{N_S} (1 - f_cho(id_L)); stochastic noise may use mu for Gamma";
  return r;
}

BoundReport qec_error_bound_independent(double gamma_single, int n, double f_id_cho) {
  require_unit(gamma_single, "gamma");
  require_unit(f_id_cho, "f_id_cho");
  if (n < 1) {
    throw DomainError("n must be at least 1");
  }
  BoundReport r;
  r.name = "qec_error_independent";
  r.value = std::pow(gamma_single, n) * (1.0 - f_id_cho);
  r.inputs = {{"gamma", gamma_single}, {"n", static_cast<double>(n)}, {"f_id_cho", f_id_cho}};
  r.anchor = "eps_x >= Gamma_N^n (1 - f_cho(id_L))";
  return r;
}

BoundReport qec_copies(double gamma_single, double f_id_cho, double eps) {
  require_unit(f_id_cho, "f_id_cho");
  BoundReport r = copies("qec_copies", gamma_single, 1.0 - f_id_cho, eps,
                         "n >= log((1-f_cho(id_L))/eps) / log(1/Gamma_N)");
  r.inputs = {{"gamma", gamma_single}, {"f_id_cho", f_id_cho}, {"eps", eps}};
  return r;
}

BoundReport capacity_min_uses(double gamma, int k, double eps) {
  if (k < 1) {
    throw DomainError("k must be at least 1");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw DomainError("gamma must lie in (0, 1]");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError("eps must lie in (0, 1)");
  }
  const double f = std::pow(2.0, -k);
  BoundReport r = copies("capacity_min_uses", gamma, 1.0 - f, eps,
                         "eps_cho >= Gamma_N^n (1 - 2^-k), f_cho(id_2^k) <= 2^-k over PPT codes");
  r.inputs = {{"gamma", gamma}, {"k", static_cast<double>(k)}, {"eps", eps}};
  return r;
}

BoundReport capacity_rate_bound(double gamma, int n, double eps) {
  if (n < 1) {
    throw DomainError("n must be at least 1");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw DomainError("gamma must lie in (0, 1]");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw DomainError("eps must lie in (0, 1)");
  }
  BoundReport r;
  r.name = "capacity_rate";
  r.kind = BoundKind::RateUpperBound;
  r.inputs = {{"gamma", gamma}, {"n", static_cast<double>(n)}, {"eps", eps}};
  r.anchor = "k/n <= -(1/n) log2(1 - eps_cho/Gamma_N^n), valid if eps_cho <= Gamma_N^n";
  const double gn = std::pow(gamma, n);
  if (eps > gn) {
    r.applicable = false;
    r.value = std::numeric_limits<double>::quiet_NaN();
    return r;
  }
  if (eps == gn) {
    r.value = kInf;
    r.infinite = true;
    return r;
  }
  r.value = -std::log2(1.0 - eps / gn) / static_cast<double>(n);
  return r;
}

BoundReport noisy_gate_count(double gamma, double f_target, double eps) {
  require_unit(f_target, "f");
  BoundReport r = copies("noisy_gate_count", gamma, 1.0 - f_target, eps,
                         "n >= log((1-f_U)/eps_diamond) / log(1/Gamma_G)");
  r.inputs = {{"gamma", gamma}, {"f", f_target}, {"eps", eps}};
  if (f_target == kCczOverlap) {
    r.anchor +=
        "; f = 9/16 is the quoted worst-case CCZ overlap (Bravyi et al. 2019, Eq. (33)), used in place of the "
        "Choi overlap the formula calls for";
  }
  return r;
}

BoundReport cv_error_bound(double gamma, double r_squeeze) {
  require_unit(gamma, "gamma");
  BoundReport r;
  r.name = "cv_error";
  r.value = gamma * (1.0 - squeezed_overlap(r_squeeze));
  r.inputs = {{"gamma", gamma}, {"r", r_squeeze}};
  r.anchor = "eps >= Gamma (1 - 1/cosh r)";
  return r;
}

BoundReport min_eigenvalue_bound(const DensityMatrix &rho, double f) {
  require_unit(f, "f");
  const double lmin = min_nonzero_eigenvalue(rho);
  BoundReport r;
  r.name = "min_eigenvalue_error";
  r.value = lmin * (1.0 - f);
  r.inputs = {{"lambda_min", lmin}, {"f", f}};
  r.anchor = "eps >= lambda_min (1 - f), smallest nonzero eigenvalue";
  return r;
}

}  // namespace freecomp
