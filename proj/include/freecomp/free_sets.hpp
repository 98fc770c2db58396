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

#ifndef FREECOMP_FREE_SETS_HPP
#define FREECOMP_FREE_SETS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "freecomp/channels.hpp"
#include "freecomp/linalg.hpp"
#include "freecomp/sdp.hpp"
#include "freecomp/states.hpp"

namespace freecomp {

/// Diagonal states in the computational basis of dimension `dim`.
struct DiagonalSet {
  std::size_t dim;
};

/// Convex hull of explicit states (or Choi states).
struct VertexHull {
  std::vector<HermitianMatrix> vertices;
};

/// A single full-rank free state.
struct GibbsSingleton {
  HermitianMatrix sigma;
};

/// Choi states of PPT channels from a dim_in system to a dim_out system,
/// in the (output (x) reference) ordering used by Channel.
struct PptChoi {
  std::size_t dim_in;
  std::size_t dim_out;
};

class FreeSetDescriptor {
 public:
  using Kind = std::variant<DiagonalSet, VertexHull, GibbsSingleton, PptChoi>;

  FreeSetDescriptor(Kind kind, std::string label);

  static FreeSetDescriptor coherence(std::size_t dim);
  static FreeSetDescriptor stabilizer_1q();
  static FreeSetDescriptor clifford_1q();
  static FreeSetDescriptor gibbs(const DensityMatrix &sigma);
  static FreeSetDescriptor ppt(std::size_t dim_in, std::size_t dim_out);
  static FreeSetDescriptor hull(std::vector<HermitianMatrix> vertices, std::string label);

  const Kind &kind() const { return kind_; }
  const std::string &label() const { return label_; }
  std::size_t dim() const;

 private:
  Kind kind_;
  std::string label_;
};

enum class GammaMethod { ClosedForm, Sdp, VertexLp };
std::string to_string(GammaMethod m);

struct GammaResult {
  double gamma = 0.0;
  GammaMethod method = GammaMethod::Sdp;
  double solver_gap = 0.0;
  /// gamma * sigma, the free part split off the input, when available.
  std::optional<HermitianMatrix> witness;
  /// Vertex weights q_j (sum = gamma) for hull sets.
  std::vector<double> vertex_weights;
  /// False when a singleton's support is not contained in the input's.
  bool support_contained = true;

  double weight() const { return 1.0 - gamma; }
};

GammaResult free_component_state(const DensityMatrix &rho, const FreeSetDescriptor &f,
                                 const SolverOptions &opts = default_solver_options());
GammaResult free_component_channel(const Channel &n, const FreeSetDescriptor &f,
                                   const SolverOptions &opts = default_solver_options());

/// max over the free set of <psi|sigma|psi>.
double max_overlap_pure(const PureState &psi, const FreeSetDescriptor &f,
                        const SolverOptions &opts = default_solver_options());
/// max over free channels of F_cho(U, M); reduces to max_overlap_pure on Phi_U.
double max_overlap_choi_unitary(const Channel &u, const FreeSetDescriptor &f,
                                const SolverOptions &opts = default_solver_options());

/// max{tr G rho : 0 <= G <= I, diag(G) = I/m} with m = dim rho; the optimal
/// fidelity of reaching the maximally coherent state by MIO.
double mio_optimal_fidelity(const DensityMatrix &rho, std::size_t m,
                            const SolverOptions &opts = default_solver_options());

/// The 24 single-qubit Cliffords modulo phase, breadth-first over words in H
/// and S; identity first.
std::vector<ComplexMatrix> clifford_unitaries_1q();
std::vector<Channel> clifford_group_1q();
/// Eigenstates of Z (|0>, |1>), X (|+>, |->), Y (|+i>, |-i>).
std::vector<PureState> stabilizer_states_1q();

/// min over vertices of -log2 tr(Pi_rho sigma). DiagonalSet uses the basis
/// states as vertices.
double d_min_resource(const DensityMatrix &rho, const FreeSetDescriptor &f);

/// log2 lambda_max(rho^{-1/2} sigma rho^{-1/2}) on supp(rho); +inf when
/// supp(sigma) is not inside supp(rho).
double d_max(const HermitianMatrix &sigma, const HermitianMatrix &rho);

/// Overlap of the squeezed vacuum with the coherent states, 1/cosh r.
double squeezed_overlap(double r);

/// Descriptor strings: coherence:d, stab1q, clifford1q, gibbs:<file>:beta,
/// ppt:dA,dB (dA the channel input, dB the output), hull:<file> with a JSON
/// list of matrices.
FreeSetDescriptor parse_free_set(std::string_view spec);

}  // namespace freecomp

#endif  // FREECOMP_FREE_SETS_HPP
