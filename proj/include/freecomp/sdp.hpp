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

#ifndef FREECOMP_SDP_HPP
#define FREECOMP_SDP_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "freecomp/linalg.hpp"

namespace freecomp {

/// One linear matrix inequality  F0 - sum_i y_i F_i  >= 0.
///
/// `coefficients` has one entry per problem variable; all matrices share
/// the dimension of `constant`.
struct LmiBlock {
  HermitianMatrix constant;
  std::vector<HermitianMatrix> coefficients;

  std::size_t dim() const { return constant.dim(); }
};

enum class VarSign { Free, Nonnegative };

/// a . y = rhs
struct LinearEquality {
  std::vector<double> coefficients;
  double rhs = 0.0;
};

/// maximize  objective . y + objective_offset
/// subject to every LMI block, the per-variable sign constraints and the
/// linear equalities.
struct SdpProblem {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  double objective_offset = 0.0;
  std::vector<LmiBlock> blocks;
  std::vector<VarSign> signs;  // empty means all Free
  std::vector<LinearEquality> equalities;

  /// Throws DomainError when the shapes are inconsistent.
  void validate() const;

  /// Convenience builders.
  explicit SdpProblem(std::size_t n = 0) : num_vars(n), objective(n, 0.0) {}
  LmiBlock &add_block(const HermitianMatrix &constant);
  void set_nonnegative(std::size_t var);
  void add_equality(std::vector<double> coefficients, double rhs);
};

enum class SdpStatus { Optimal, Infeasible, Unbounded, IterLimit };

std::string to_string(SdpStatus s);

struct SdpSolution {
  std::vector<double> y;
  double primal_value = 0.0;  // objective . y + offset
  double dual_value = 0.0;    // value of the dual (minimization) certificate
  double gap = 0.0;           // dual_value - primal_value
  SdpStatus status = SdpStatus::IterLimit;
  /// Minimum eigenvalue of F0 - sum y_i F_i for each block of the input problem.
  std::vector<double> certificate;
  int iterations = 0;

  bool optimal() const { return status == SdpStatus::Optimal; }
};

struct SolverOptions {
  double gap_tol = 1e-8;
  double feas_tol = 1e-7;
  int max_iterations = 200;
  double step_fraction = 0.98;
};

/// Default options, with gap_tol overridden by the SOLVER_GAP_TOL environment
/// variable when it parses as a positive number.
SolverOptions default_solver_options();

/// Primal-dual path-following interior point over the real-embedded blocks,
/// Nesterov-Todd scaling, homogeneous self-dual embedding for infeasibility
/// and unboundedness detection. Deterministic.
SdpSolution solve(const SdpProblem &problem, const SolverOptions &options);
SdpSolution solve(const SdpProblem &problem, double gap_tol = 1e-8, double feas_tol = 1e-7);

/// H -> [[Re H, -Im H], [Im H, Re H]].
Eigen::MatrixXd real_embed(const HermitianMatrix &h);

struct RealLmiBlock {
  Eigen::MatrixXd constant;
  std::vector<Eigen::MatrixXd> coefficients;
};
RealLmiBlock real_embed(const LmiBlock &block);

/// Problem over a reduced parametrization y = particular + basis * z of the
/// affine set cut out by the equalities. The reduced problem has no
/// equalities; nonnegative variables of the input appear as 1x1 blocks
/// appended after the original blocks.
struct ReducedProblem {
  SdpProblem problem;
  std::vector<double> particular;
  Eigen::MatrixXd basis;  // num_vars x reduced vars

  std::vector<double> lift(const std::vector<double> &z) const;
};

/// Row reduction with partial pivoting on [A | c]. Returns nullopt when the
/// equalities are inconsistent.
std::optional<ReducedProblem> eliminate_equalities(const SdpProblem &problem);

/// Orthogonal basis {E_kk, E_kl + E_lk, i(E_lk - E_kl)} of n x n Hermitian
/// matrices (n^2 elements); coordinates are real parameters.
std::vector<HermitianMatrix> hermitian_basis(std::size_t n);

/// Debug dump; the layout mirrors SdpProblem and is not a stable format.
nlohmann::json problem_to_json(const SdpProblem &problem);
SdpProblem problem_from_json(const nlohmann::json &doc);

}  // namespace freecomp

#endif  // FREECOMP_SDP_HPP
