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

#include "freecomp/states.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "freecomp/errors.hpp"
#include "freecomp/matrix_io.hpp"

namespace freecomp {

namespace {

constexpr double kRankCutoff = 1e-10;

double norm2(const std::vector<Complex> &v) {
  double s = 0.0;
  for (const auto &z : v) {
    s += std::norm(z);
  }
  return s;
}

void require_unit(double x, const char *name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

PureState::PureState(std::vector<Complex> amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.empty()) {
    throw DomainError("PureState: empty vector");
  }
  if (std::abs(std::sqrt(norm2(amp_)) - 1.0) > kNormTol) {
    throw DomainError("PureState: amplitudes not normalized");
  }
}

PureState PureState::normalized(std::vector<Complex> amplitudes) {
  const double n = std::sqrt(norm2(amplitudes));
  if (!(n > 0.0)) {
    throw DomainError("PureState: zero vector");
  }
  for (auto &z : amplitudes) {
    z /= n;
  }
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) {
    throw DomainError("PureState::basis: index out of range");
  }
  std::vector<Complex> v(dim, 0.0);
  v[k] = 1.0;
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  if (m_.dim() == 0) {
    throw DomainError("DensityMatrix: empty matrix");
  }
  if (std::abs(m_.trace() - 1.0) > kTol) {
    throw DomainError("DensityMatrix: trace is not 1");
  }
  if (!is_psd(m_, kTol)) {
    throw DomainError("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix::DensityMatrix(const PureState &psi) : m_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  if (dim == 0) {
    throw DomainError("maximally_mixed: dim must be positive");
  }
  return DensityMatrix((1.0 / static_cast<double>(dim)) * HermitianMatrix::identity(dim));
}

HermitianMatrix sqrt_psd(const HermitianMatrix &m) {
  return apply_spectral(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

double trace_norm(const HermitianMatrix &m) {
  double s = 0.0;
  for (double x : eig_hermitian(m).eigenvalues) {
    s += std::abs(x);
  }
  return s;
}

namespace {
constexpr double kSqrtFloor = 1e-13;
}  // namespace

double fidelity(const HermitianMatrix &rho, const HermitianMatrix &sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DomainError("fidelity: dimension mismatch");
  }
  // Rounding-level eigenvalues of rank-deficient inputs would enter as their
  // square roots (1e-16 -> 1e-8), so they are zeroed first.
  const double rho_floor = kSqrtFloor * std::max(max_eigenvalue(rho), 0.0);
  const HermitianMatrix r = apply_spectral(rho, [&](double x) { return x > rho_floor ? std::sqrt(x) : 0.0; });
  const HermitianMatrix inner = conjugate_by(r.matrix(), sigma);
  const auto ev = eig_hermitian(inner).eigenvalues;
  const double inner_floor = kSqrtFloor * std::max(*std::max_element(ev.begin(), ev.end()), 0.0);
  double s = 0.0;
  for (double x : ev) {
    s += x > inner_floor ? std::sqrt(x) : 0.0;
  }
  return std::clamp(s * s, 0.0, 1.0);
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
  return fidelity(rho.mat(), sigma.mat());
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
  if (rho.dim() != sigma.dim()) {
    throw DomainError("trace_distance: dimension mismatch");
  }
  return 0.5 * trace_norm(rho.mat() - sigma.mat());
}

double pure_overlap(const PureState &psi, const DensityMatrix &sigma) {
  if (psi.dim() != sigma.dim()) {
    throw DomainError("pure_overlap: dimension mismatch");
  }
  const auto &v = psi.amplitudes();
  const auto w = sigma.mat().matrix().apply(v);
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    s += std::conj(v[i]) * w[i];
  }
  return s.real();
}

double min_nonzero_eigenvalue(const DensityMatrix &rho) {
  const auto ev = eig_hermitian(rho.mat()).eigenvalues;
  double best = ev.front();
  for (double x : ev) {
    if (x > kRankCutoff) {
      best = std::min(best, x);
    }
  }
  return best;
}

HermitianMatrix support_projector(const HermitianMatrix &rho) {
  return apply_spectral(rho, [](double x) { return x > kRankCutoff ? 1.0 : 0.0; });
}

PureState plus_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  return PureState({h, h});
}

PureState t_state() {
  const double h = 1.0 / std::numbers::sqrt2;
  return PureState({h, h * std::polar(1.0, std::numbers::pi / 4.0)});
}

DensityMatrix noisy_t(double zeta) {
  require_unit(zeta, "zeta");
  return DensityMatrix((1.0 - zeta) * t_state().projector() + (zeta / 2.0) * HermitianMatrix::identity(2));
}

DensityMatrix depolarized_plus(double mu) {
  require_unit(mu, "mu");
  const double off = (1.0 - mu) / 2.0;
  return DensityMatrix(HermitianMatrix{{0.5, off}, {off, 0.5}});
}

DensityMatrix dephased_plus(double mu) {
  // Same matrix as depolarized_plus: both noises only shrink the coherence.
  return depolarized_plus(mu);
}

DensityMatrix amp_damped_plus(double nu) {
  require_unit(nu, "nu");
  const double off = std::sqrt(1.0 - nu) / 2.0;
  return DensityMatrix(HermitianMatrix{{(1.0 + nu) / 2.0, off}, {off, (1.0 - nu) / 2.0}});
}

DensityMatrix gibbs_state(const HermitianMatrix &hamiltonian, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw DomainError("beta must be finite and nonnegative");
  }
  const Spectrum s = eig_hermitian(hamiltonian);
  // Shift by the ground energy so the exponentials cannot overflow.
  const double e0 = s.eigenvalues.back();
  const HermitianMatrix w = apply_spectral(s, [&](double e) { return std::exp(-beta * (e - e0)); });
  return DensityMatrix((1.0 / w.trace()) * w);
}

DensityMatrix coherence_gamma_zero_example() {
  const double h = 1.0 / std::numbers::sqrt2;
  const PureState p1({h, h, 0.0, 0.0});
  const PureState p2({0.0, 0.0, h, h});
  return DensityMatrix(0.5 * (p1.projector() + p2.projector()));
}

std::vector<std::string> split_spec(std::string_view spec) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = spec.find(':', start);
    parts.emplace_back(spec.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start));
    if (colon == std::string_view::npos) {
      break;
    }
    start = colon + 1;
  }
  for (auto &c : parts[0]) {
    c = c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return parts;
}

double parse_real(const std::string &text, const char *what) {
  double v = 0.0;
  const char *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError(std::string("cannot parse ") + what + " from '" + text + "'");
  }
  return v;
}

std::size_t parse_count(const std::string &text, const char *what) {
  std::size_t v = 0;
  const char *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ParseError(std::string("cannot parse ") + what + " from '" + text + "'");
  }
  return v;
}

DensityMatrix make_named_state(std::string_view spec) {
  const auto parts = split_spec(spec);
  const std::string &name = parts[0];
  auto want = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw ParseError("state '" + name + "' takes " + std::to_string(n) + " parameter(s)");
    }
  };
  if (name == "plus") {
    want(0);
    return DensityMatrix(plus_state());
  }
  if (name == "t_state" || name == "t") {
    want(0);
    return DensityMatrix(t_state());
  }
  if (name == "noisy_t") {
    want(1);
    return noisy_t(parse_real(parts[1], "zeta"));
  }
  if (name == "depolarized_plus") {
    want(1);
    return depolarized_plus(parse_real(parts[1], "mu"));
  }
  if (name == "dephased_plus") {
    want(1);
    return dephased_plus(parse_real(parts[1], "mu"));
  }
  if (name == "amp_damped_plus") {
    want(1);
    return amp_damped_plus(parse_real(parts[1], "nu"));
  }
  if (name == "maximally_mixed") {
    want(1);
    return DensityMatrix::maximally_mixed(parse_count(parts[1], "dimension"));
  }
  if (name == "basis") {
    want(2);
    return DensityMatrix(PureState::basis(parse_count(parts[1], "dimension"), parse_count(parts[2], "index")));
  }
  if (name == "coherence_gamma_zero_example" || name == "gamma_zero") {
    want(0);
    return coherence_gamma_zero_example();
  }
  if (name == "gibbs") {
    want(2);
    return gibbs_state(read_hermitian_file(parts[1]), parse_real(parts[2], "beta"));
  }
  throw ParseError("unknown state '" + name + "'");
}

}  // namespace freecomp
