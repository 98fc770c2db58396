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

#ifndef FREECOMP_BOUNDS_HPP
#define FREECOMP_BOUNDS_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "freecomp/states.hpp"

namespace freecomp {

enum class BoundKind { ErrorLowerBound, CopyLowerBound, RateUpperBound };
std::string to_string(BoundKind k);

/// A bound's right-hand side plus the numbers that went into it. Copy and
/// rate bounds are real valued; rounding up is left to the caller.
struct BoundReport {
  std::string name;
  double value = 0.0;
  /// The bound diverges (value is +inf).
  bool infinite = false;
  /// False when the formula's validity condition fails (value is NaN).
  bool applicable = true;
  std::map<std::string, double> inputs;
  std::string anchor;  // formula the value came from, plus caveats
  BoundKind kind = BoundKind::ErrorLowerBound;

  nlohmann::json to_json() const;
};

/// "%.12g", with inf / nan spelled out.
std::string format_number(double x);

/// Header and one row per report: name,value,infinite,applicable,<input keys...>.
std::string bounds_csv(const std::vector<BoundReport> &reports);

/// Gamma (1 - f).
BoundReport state_error_bound(double gamma, double f);

/// log((1-f)/eps) / log(1/gamma); 0 once eps >= 1-f, infinite at gamma = 1.
BoundReport distillation_overhead(double gamma, double f, double eps);

/// Copies of tau(zeta) needed for m T states at per-qubit error eps.
BoundReport magic_overhead(double zeta, int m, double eps);

struct ChannelErrorBounds {
  double diamond = 0.0;
  double worst = 0.0;
  double choi = 0.0;
  double average = 0.0;
};
ChannelErrorBounds channel_error_bounds(double gamma, double f_cho, int d);
std::vector<BoundReport> channel_error_reports(double gamma, double f_cho, int d);

/// Parallel and adaptive simulation cost share one formula.
BoundReport simulation_cost(double gamma, double f_cho, double eps);

BoundReport qec_error_bound(double gamma_ns, double f_id_cho);
/// n independent noisy subsystems: gamma^n (1 - f).
BoundReport qec_error_bound_independent(double gamma_single, int n, double f_id_cho);
BoundReport qec_copies(double gamma_single, double f_id_cho, double eps);

/// Channel uses needed for k qubits at Choi error eps, with f = 2^-k.
BoundReport capacity_min_uses(double gamma, int k, double eps);
/// k/n <= -(1/n) log2(1 - eps/gamma^n); inapplicable when eps > gamma^n.
BoundReport capacity_rate_bound(double gamma, int n, double eps);

/// Worst-case overlap of CCZ with the Clifford-simulable channels. Quoted,
/// not computed here: Bravyi et al., "Simulation of quantum circuits by
/// low-rank stabilizer decompositions", Quantum 3, 181 (2019), Eq. (33).
inline constexpr double kCczOverlap = 9.0 / 16.0;

BoundReport noisy_gate_count(double gamma, double f_target, double eps);

/// Gamma (1 - 1/cosh r).
BoundReport cv_error_bound(double gamma, double r);

/// lambda_min (1 - f) with lambda_min the smallest nonzero eigenvalue.
BoundReport min_eigenvalue_bound(const DensityMatrix &rho, double f);

}  // namespace freecomp

#endif  // FREECOMP_BOUNDS_HPP
