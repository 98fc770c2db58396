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

#ifndef FREECOMP_CHANNELS_HPP
#define FREECOMP_CHANNELS_HPP

#include <array>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "freecomp/linalg.hpp"
#include "freecomp/sdp.hpp"
#include "freecomp/states.hpp"

namespace freecomp {

/// Channel stored as its Choi state
///   Phi = (N (x) id)(|Omega><Omega|),  |Omega> = sum_i |i>|i> / sqrt(d_in),
/// on output (x) reference, with trace 1. The unnormalized Choi operator
/// used in much of the literature is d_in * Phi.
class Channel {
 public:
  static constexpr double kTol = 1e-9;

  /// Throws DomainError unless choi is PSD with unit trace and reference
  /// marginal I/d_in.
  Channel(std::size_t dim_in, std::size_t dim_out, HermitianMatrix choi);

  static Channel from_kraus(const std::vector<ComplexMatrix> &kraus);
  static Channel unitary(const ComplexMatrix &u);
  static Channel identity(std::size_t dim);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const HermitianMatrix &choi() const { return choi_; }
  DensityMatrix choi_state() const { return DensityMatrix(choi_); }

  /// N(X) = d_in tr_R[Phi (I (x) X^T)] for any square X on the input.
  ComplexMatrix apply(const ComplexMatrix &x) const;
  HermitianMatrix apply(const HermitianMatrix &x) const;
  DensityMatrix apply(const DensityMatrix &rho) const;

  /// (N (x) id_R)(X) for X on input (x) R with R of dimension ref_dim.
  HermitianMatrix apply_with_reference(const HermitianMatrix &x, std::size_t ref_dim) const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  HermitianMatrix choi_;
};

/// second o first.
Channel compose(const Channel &second, const Channel &first);
Channel tensor(const Channel &a, const Channel &b);
/// p a + (1-p) b.
Channel mix(double p, const Channel &a, const Channel &b);

/// Rank-one Choi within tol.
bool is_unitary_channel(const Channel &n, double tol = 1e-9);

double choi_fidelity(const Channel &n, const Channel &m);
/// (d F_cho + 1)/(d + 1); throws DomainError if u is not unitary.
double average_fidelity_to_unitary(const Channel &n, const Channel &u);

struct WorstCaseFidelity {
  double value = 1.0;
  bool approximate = true;  // local search: an upper bound on the infimum
  std::vector<Complex> input;  // minimizing input on system (x) reference
};

/// min over pure inputs on system (x) reference of F(rho_N, rho_U). Seeds are
/// the maximally entangled state and products of basis/Fourier states,
/// each refined by Nelder-Mead; never above the Choi fidelity.
WorstCaseFidelity worst_case_fidelity_to_unitary(const Channel &n, const Channel &u);

/// Fidelity of N vs U on one pure input (vector on system (x) reference).
double output_fidelity_to_unitary(const Channel &n, const Channel &u, const std::vector<Complex> &input);

/// 1/2 ||N - M||_diamond, by the SDP
///   max <J, W>  s.t.  0 <= W <= I (x) rho,  rho >= 0,  tr rho = 1
/// with J the unnormalized Choi operator of N - M.
double diamond_distance(const Channel &n, const Channel &m, const SolverOptions &opts);
double diamond_distance(const Channel &n, const Channel &m);

ComplexMatrix gate_matrix(std::string_view name);  // i, x, y, z, h, s, t, ccz
Channel depolarizing(double mu, std::size_t dim = 2);
Channel dephasing(double mu, std::size_t dim = 2);
Channel amplitude_damping(double nu);
/// With probability mu the input is replaced by an extra orthogonal flag level.
Channel erasure(double mu, std::size_t dim = 2);
/// rho -> (1 - sum mu) rho + mu_x X rho X + mu_y Y rho Y + mu_z Z rho Z.
Channel pauli_channel(const std::array<double, 3> &mu);
Channel replacer(const DensityMatrix &sigma, std::size_t dim_in);
/// (1 - mu) id + mu N.
Channel stochastic_mix(double mu, const Channel &n);

/// `name[:params]`, chained with '*' for composition (leftmost applied last),
/// e.g. `depolarizing:0.2*unitary:t`. Names: identity:d, unitary:<gate>,
/// depolarizing:mu[:d], dephasing:mu, amplitude_damping:nu, erasure:mu,
/// pauli:mx,my,mz, replacer:<state spec>... (rest of the string),
/// noisy_t:mu (= depolarizing:mu*unitary:t).
Channel make_named_channel(std::string_view spec);

nlohmann::json channel_to_json(const Channel &n);
Channel channel_from_json(const nlohmann::json &doc);

}  // namespace freecomp

#endif  // FREECOMP_CHANNELS_HPP
