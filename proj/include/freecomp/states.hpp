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

#ifndef FREECOMP_STATES_HPP
#define FREECOMP_STATES_HPP

#include <string>
#include <string_view>
#include <vector>

#include "freecomp/linalg.hpp"

namespace freecomp {

class PureState {
 public:
  static constexpr double kNormTol = 1e-12;

  /// Throws DomainError unless the vector has unit norm.
  explicit PureState(std::vector<Complex> amplitudes);
  /// Rescales any nonzero vector to unit norm.
  static PureState normalized(std::vector<Complex> amplitudes);
  static PureState basis(std::size_t dim, std::size_t k);

  std::size_t dim() const { return amp_.size(); }
  const std::vector<Complex> &amplitudes() const { return amp_; }
  HermitianMatrix projector() const { return HermitianMatrix::projector(amp_); }

 private:
  std::vector<Complex> amp_;
};

class DensityMatrix {
 public:
  static constexpr double kTol = 1e-9;

  /// Throws DomainError unless PSD and unit trace within kTol.
  explicit DensityMatrix(HermitianMatrix m);
  DensityMatrix(const PureState &psi);  // NOLINT: a pure state is a density matrix
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const { return m_.dim(); }
  const HermitianMatrix &mat() const { return m_; }

 private:
  HermitianMatrix m_;
};

/// Square root of a PSD matrix; negative (roundoff) eigenvalues are clamped to 0.
HermitianMatrix sqrt_psd(const HermitianMatrix &m);
double trace_norm(const HermitianMatrix &m);

/// (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);
double fidelity(const HermitianMatrix &rho, const HermitianMatrix &sigma);
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);
/// <psi|sigma|psi>.
double pure_overlap(const PureState &psi, const DensityMatrix &sigma);

/// Smallest eigenvalue above the 1e-10 rank cutoff.
double min_nonzero_eigenvalue(const DensityMatrix &rho);
/// Projector onto the span of eigenvectors with eigenvalue above 1e-10.
HermitianMatrix support_projector(const HermitianMatrix &rho);

PureState plus_state();
PureState t_state();  // T|+>

DensityMatrix noisy_t(double zeta);
DensityMatrix depolarized_plus(double mu);
DensityMatrix dephased_plus(double mu);
DensityMatrix amp_damped_plus(double nu);
DensityMatrix gibbs_state(const HermitianMatrix &hamiltonian, double beta);
/// (|psi1><psi1| + |psi2><psi2|)/2 with psi1 = |0>+|1>, psi2 = |2>+|3> (normalized).
DensityMatrix coherence_gamma_zero_example();

/// `name` or `name:p1[:p2...]`; hyphens and underscores are interchangeable.
/// Names: plus, t_state, noisy_t:z, depolarized_plus:mu, dephased_plus:mu,
/// amp_damped_plus:nu, maximally_mixed:d, basis:d:k,
/// coherence_gamma_zero_example, gibbs:<hamiltonian.json>:beta.
/// Throws ParseError for unknown names or malformed numbers and DomainError
/// for out-of-range parameters.
DensityMatrix make_named_state(std::string_view spec);

/// Splits `a:b:c` and canonicalizes the head (lowercase, '-' -> '_').
std::vector<std::string> split_spec(std::string_view spec);
double parse_real(const std::string &text, const char *what);
std::size_t parse_count(const std::string &text, const char *what);

}  // namespace freecomp

#endif  // FREECOMP_STATES_HPP
