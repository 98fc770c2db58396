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

#include "freecomp/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "freecomp/errors.hpp"
#include "freecomp/matrix_io.hpp"
#include "freecomp/nelder_mead.hpp"

namespace freecomp {

namespace {

void require_unit(double x, const char *name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1]");
  }
}

void require_same_dims(const Channel &a, const Channel &b, const char *what) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw DomainError(std::string(what) + ": channel dimensions differ");
  }
}

// U with Phi_U = vec(U) vec(U)^dag / d, read off the top eigenvector.
ComplexMatrix unitary_from_choi(const Channel &u) {
  if (!is_unitary_channel(u, 1e-7)) {
    throw DomainError("target channel is not unitary");
  }
  const Spectrum s = eig_hermitian(u.choi());
  const auto v = s.eigenvector(0);
  const std::size_t d = u.dim_in();
  const double scale = std::sqrt(static_cast<double>(d));
  ComplexMatrix m(d, d);
  for (std::size_t o = 0; o < d; ++o) {
    for (std::size_t i = 0; i < d; ++i) {
      m(o, i) = scale * v[o * d + i];
    }
  }
  return m;
}

// F(rho_N, rho_U) for input phi on system (x) reference, both of dim d:
// d * a^T Phi conj(a),  a_{os} = sum_r conj(v_{or}) phi_{sr},  v = (U (x) I) phi.
double fidelity_for_input(const HermitianMatrix &choi, const ComplexMatrix &u, const std::vector<Complex> &phi) {
  const std::size_t d = u.rows();
  std::vector<Complex> v(d * d, 0.0);
  for (std::size_t o = 0; o < d; ++o) {
    for (std::size_t r = 0; r < d; ++r) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        s += u(o, k) * phi[k * d + r];
      }
      v[o * d + r] = s;
    }
  }
  std::vector<Complex> a(d * d, 0.0);
  for (std::size_t o = 0; o < d; ++o) {
    for (std::size_t s = 0; s < d; ++s) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < d; ++r) {
        acc += std::conj(v[o * d + r]) * phi[s * d + r];
      }
      a[o * d + s] = acc;
    }
  }
  Complex f = 0.0;
  const std::size_t n = d * d;
  for (std::size_t x = 0; x < n; ++x) {
    Complex row = 0.0;
    for (std::size_t y = 0; y < n; ++y) {
      row += choi(x, y) * std::conj(a[y]);
    }
    f += a[x] * row;
  }
  return static_cast<double>(d) * f.real();
}

std::vector<Complex> unpack(const std::vector<double> &x) {
  std::vector<Complex> phi(x.size() / 2);
  double s = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    phi[k] = {x[2 * k], x[2 * k + 1]};
    s += std::norm(phi[k]);
  }
  const double n = std::sqrt(s);
  for (auto &z : phi) {
    z /= n;
  }
  return phi;
}

std::vector<double> pack(const std::vector<Complex> &phi) {
  std::vector<double> x(2 * phi.size());
  for (std::size_t k = 0; k < phi.size(); ++k) {
    x[2 * k] = phi[k].real();
    x[2 * k + 1] = phi[k].imag();
  }
  return x;
}

// Maximally entangled input, then (basis, Fourier and for qubits Y
// eigenstates) on the system with the reference in |0>.
std::vector<std::vector<Complex>> seed_inputs(std::size_t d) {
  std::vector<std::vector<Complex>> seeds;
  std::vector<Complex> omega(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    omega[i * d + i] = 1.0 / std::sqrt(static_cast<double>(d));
  }
  seeds.push_back(omega);
  std::vector<std::vector<Complex>> locals;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Complex> e(d, 0.0);
    e[j] = 1.0;
    locals.push_back(e);
  }
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<Complex> f(d);
    for (std::size_t k = 0; k < d; ++k) {
      f[k] = std::polar(1.0 / std::sqrt(static_cast<double>(d)),
                        2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(d));
    }
    locals.push_back(f);
  }
  if (d == 2) {
    const double h = 1.0 / std::numbers::sqrt2;
    locals.push_back({h, Complex{0.0, h}});
    locals.push_back({h, Complex{0.0, -h}});
  }
  for (const auto &l : locals) {
    std::vector<Complex> in(d * d, 0.0);
    for (std::size_t s = 0; s < d; ++s) {
      in[s * d] = l[s];
    }
    seeds.push_back(in);
  }
  return seeds;
}

}  // namespace

Channel::Channel(std::size_t dim_in, std::size_t dim_out, HermitianMatrix choi)
    : dim_in_(dim_in), dim_out_(dim_out), choi_(std::move(choi)) {
  if (dim_in_ == 0 || dim_out_ == 0 || choi_.dim() != dim_in_ * dim_out_) {
    throw DomainError("Channel: Choi dimension does not match dim_in * dim_out");
  }
  if (std::abs(choi_.trace() - 1.0) > kTol) {
    throw DomainError("Channel: Choi trace is not 1");
  }
  if (!is_psd(choi_, kTol)) {
    throw DomainError("Channel: Choi matrix is not positive (map not completely positive)");
  }
  const HermitianMatrix marg = partial_trace(choi_, {dim_out_, dim_in_}, Subsystem::B);
  const HermitianMatrix target = (1.0 / static_cast<double>(dim_in_)) * HermitianMatrix::identity(dim_in_);
  if (max_abs_diff(marg.matrix(), target.matrix()) > kTol) {
    throw DomainError("Channel: map is not trace preserving");
  }
}

Channel Channel::from_kraus(const std::vector<ComplexMatrix> &kraus) {
  if (kraus.empty()) {
    throw DomainError("from_kraus: no operators");
  }
  const std::size_t dout = kraus[0].rows();
  const std::size_t din = kraus[0].cols();
  const std::size_t n = dout * din;
  ComplexMatrix c(n, n);
  for (const auto &k : kraus) {
    if (k.rows() != dout || k.cols() != din) {
      throw DomainError("from_kraus: operators differ in shape");
    }
    for (std::size_t x = 0; x < n; ++x) {
      const Complex kx = k(x / din, x % din);
      if (kx == Complex{}) {
        continue;
      }
      for (std::size_t y = 0; y < n; ++y) {
        c(x, y) += kx * std::conj(k(y / din, y % din));
      }
    }
  }
  c *= Complex{1.0 / static_cast<double>(din), 0.0};
  return Channel(din, dout, HermitianMatrix(c));
}

Channel Channel::unitary(const ComplexMatrix &u) {
  if (!u.is_square()) {
    throw DomainError("unitary: matrix not square");
  }
  if (max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())) > 1e-9) {
    throw DomainError("unitary: matrix is not unitary");
  }
  return from_kraus({u});
}

Channel Channel::identity(std::size_t dim) { return unitary(ComplexMatrix::identity(dim)); }

ComplexMatrix Channel::apply(const ComplexMatrix &x) const {
  if (x.rows() != dim_in_ || x.cols() != dim_in_) {
    throw DomainError("apply: input dimension mismatch");
  }
  const std::size_t d = dim_in_;
  ComplexMatrix y(dim_out_, dim_out_);
  for (std::size_t o = 0; o < dim_out_; ++o) {
    for (std::size_t p = 0; p < dim_out_; ++p) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t k = 0; k < d; ++k) {
          s += choi_(o * d + i, p * d + k) * x(i, k);
        }
      }
      y(o, p) = s * static_cast<double>(d);
    }
  }
  return y;
}

HermitianMatrix Channel::apply(const HermitianMatrix &x) const { return HermitianMatrix(apply(x.matrix())); }

DensityMatrix Channel::apply(const DensityMatrix &rho) const { return DensityMatrix(apply(rho.mat())); }

HermitianMatrix Channel::apply_with_reference(const HermitianMatrix &x, std::size_t ref_dim) const {
  if (x.dim() != dim_in_ * ref_dim) {
    throw DomainError("apply_with_reference: dimension mismatch");
  }
  const std::size_t d = dim_in_;
  const std::size_t r = ref_dim;
  ComplexMatrix y(dim_out_ * r, dim_out_ * r);
  for (std::size_t a = 0; a < r; ++a) {
    for (std::size_t b = 0; b < r; ++b) {
      for (std::size_t o = 0; o < dim_out_; ++o) {
        for (std::size_t p = 0; p < dim_out_; ++p) {
          Complex s = 0.0;
          for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t k = 0; k < d; ++k) {
              s += choi_(o * d + i, p * d + k) * x(i * r + a, k * r + b);
            }
          }
          y(o * r + a, p * r + b) = s * static_cast<double>(d);
        }
      }
    }
  }
  return HermitianMatrix(y);
}

Channel compose(const Channel &second, const Channel &first) {
  if (second.dim_in() != first.dim_out()) {
    throw DomainError("compose: output of the first channel does not match input of the second");
  }
  return Channel(first.dim_in(), second.dim_out(), second.apply_with_reference(first.choi(), first.dim_in()));
}

Channel tensor(const Channel &a, const Channel &b) {
  const HermitianMatrix k = kron(a.choi(), b.choi());
  // (out_a, ref_a, out_b, ref_b) -> (out_a, out_b, ref_a, ref_b)
  const HermitianMatrix c =
      permute_subsystems(k, {a.dim_out(), a.dim_in(), b.dim_out(), b.dim_in()}, {0, 2, 1, 3});
  return Channel(a.dim_in() * b.dim_in(), a.dim_out() * b.dim_out(), c);
}

Channel mix(double p, const Channel &a, const Channel &b) {
  require_unit(p, "mixing weight");
  require_same_dims(a, b, "mix");
  return Channel(a.dim_in(), a.dim_out(), p * a.choi() + (1.0 - p) * b.choi());
}

bool is_unitary_channel(const Channel &n, double tol) {
  return n.dim_in() == n.dim_out() && max_eigenvalue(n.choi()) >= 1.0 - tol;
}

double choi_fidelity(const Channel &n, const Channel &m) {
  require_same_dims(n, m, "choi_fidelity");
  return fidelity(n.choi(), m.choi());
}

double average_fidelity_to_unitary(const Channel &n, const Channel &u) {
  require_same_dims(n, u, "average_fidelity");
  if (!is_unitary_channel(u, 1e-7)) {
    throw DomainError("average_fidelity: target channel is not unitary");
  }
  const double d = static_cast<double>(n.dim_in());
  return (d * choi_fidelity(n, u) + 1.0) / (d + 1.0);
}

double output_fidelity_to_unitary(const Channel &n, const Channel &u, const std::vector<Complex> &input) {
  require_same_dims(n, u, "output_fidelity");
  const ComplexMatrix um = unitary_from_choi(u);
  if (input.size() != n.dim_in() * n.dim_in()) {
    throw DomainError("output_fidelity: input must live on system (x) reference");
  }
  return fidelity_for_input(n.choi(), um, PureState::normalized(input).amplitudes());
}

WorstCaseFidelity worst_case_fidelity_to_unitary(const Channel &n, const Channel &u) {
  require_same_dims(n, u, "worst_case_fidelity");
  const ComplexMatrix um = unitary_from_choi(u);
  const HermitianMatrix &choi = n.choi();
  auto objective = [&](const std::vector<double> &x) { return fidelity_for_input(choi, um, unpack(x)); };

  WorstCaseFidelity best;
  best.value = 2.0;
  NelderMeadOptions nm;
  nm.initial_step = 0.25;
  nm.f_tol = 1e-12;
  nm.max_evaluations = 3000;
  for (const auto &seed : seed_inputs(n.dim_in())) {
    const double f0 = fidelity_for_input(choi, um, seed);
    if (f0 < best.value) {
      best.value = f0;
      best.input = seed;
    }
    const NelderMeadResult r = nelder_mead(objective, pack(seed), nm);
    if (r.value < best.value) {
      best.value = r.value;
      best.input = unpack(r.x);
    }
  }
  best.value = std::clamp(best.value, 0.0, 1.0);
  return best;
}

double diamond_distance(const Channel &n, const Channel &m, const SolverOptions &opts) {
  require_same_dims(n, m, "diamond_distance");
  const std::size_t din = n.dim_in();
  const std::size_t dout = n.dim_out();
  const std::size_t dw = din * dout;
  const HermitianMatrix j = static_cast<double>(din) * (n.choi() - m.choi());
  if (j.matrix().max_abs() < 1e-14) {
    return 0.0;
  }
  const auto bw = hermitian_basis(dw);
  const auto br = hermitian_basis(din);
  const std::size_t nw = bw.size();
  SdpProblem p(nw + br.size());
  p.add_block(HermitianMatrix::zeros(dw));  // W >= 0
  p.add_block(HermitianMatrix::zeros(dw));  // I (x) rho - W >= 0
  p.add_block(HermitianMatrix::zeros(din));  // rho >= 0
  const HermitianMatrix iout = HermitianMatrix::identity(dout);
  std::vector<double> trace_row(p.num_vars, 0.0);
  for (std::size_t k = 0; k < nw; ++k) {
    p.objective[k] = trace_product(j, bw[k]);
    p.blocks[0].coefficients[k] = -1.0 * bw[k];
    p.blocks[1].coefficients[k] = bw[k];
  }
  for (std::size_t k = 0; k < br.size(); ++k) {
    p.blocks[1].coefficients[nw + k] = -1.0 * kron(iout, br[k]);
    p.blocks[2].coefficients[nw + k] = -1.0 * br[k];
    trace_row[nw + k] = br[k].trace();
  }
  p.add_equality(trace_row, 1.0);
  const SdpSolution sol = solve(p, opts);
  if (!sol.optimal()) {
    throw SolverError("diamond_distance: solver returned " + to_string(sol.status));
  }
  return std::clamp(sol.primal_value, 0.0, 1.0);
}

double diamond_distance(const Channel &n, const Channel &m) {
  return diamond_distance(n, m, default_solver_options());
}

ComplexMatrix gate_matrix(std::string_view name) {
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  if (name == "i" || name == "id") {
    return ComplexMatrix::identity(2);
  }
  if (name == "x") {
    return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
  }
  if (name == "y") {
    return ComplexMatrix{{0.0, -i}, {i, 0.0}};
  }
  if (name == "z") {
    return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
  }
  if (name == "h") {
    return ComplexMatrix{{h, h}, {h, -h}};
  }
  if (name == "s") {
    return ComplexMatrix{{1.0, 0.0}, {0.0, i}};
  }
  if (name == "t") {
    return ComplexMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, std::numbers::pi / 4.0)}};
  }
  if (name == "ccz") {
    ComplexMatrix m = ComplexMatrix::identity(8);
    m(7, 7) = -1.0;
    return m;
  }
  throw ParseError("unknown gate '" + std::string(name) + "'");
}

Channel depolarizing(double mu, std::size_t dim) {
  require_unit(mu, "mu");
  const Channel id = Channel::identity(dim);
  const HermitianMatrix flat = (1.0 / static_cast<double>(dim * dim)) * HermitianMatrix::identity(dim * dim);
  return Channel(dim, dim, (1.0 - mu) * id.choi() + mu * flat);
}

Channel dephasing(double mu, std::size_t dim) {
  require_unit(mu, "mu");
  // Off-diagonal entries of the Choi state shrink by 1 - mu.
  const HermitianMatrix c = Channel::identity(dim).choi();
  ComplexMatrix m = c.matrix();
  for (std::size_t x = 0; x < dim * dim; ++x) {
    for (std::size_t y = 0; y < dim * dim; ++y) {
      if (x != y) {
        m(x, y) *= (1.0 - mu);
      }
    }
  }
  return Channel(dim, dim, HermitianMatrix(m));
}

Channel amplitude_damping(double nu) {
  require_unit(nu, "nu");
  const ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - nu)}};
  const ComplexMatrix k1{{0.0, std::sqrt(nu)}, {0.0, 0.0}};
  return Channel::from_kraus({k0, k1});
}

Channel erasure(double mu, std::size_t dim) {
  require_unit(mu, "mu");
  std::vector<ComplexMatrix> kraus;
  ComplexMatrix keep(dim + 1, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    keep(i, i) = std::sqrt(1.0 - mu);
  }
  kraus.push_back(keep);
  for (std::size_t i = 0; i < dim; ++i) {
    ComplexMatrix flag(dim + 1, dim);
    flag(dim, i) = std::sqrt(mu);
    kraus.push_back(flag);
  }
  return Channel::from_kraus(kraus);
}

Channel pauli_channel(const std::array<double, 3> &mu) {
  const double total = mu[0] + mu[1] + mu[2];
  for (double m : mu) {
    require_unit(m, "pauli weight");
  }
  if (total > 1.0 + 1e-12) {
    throw DomainError("pauli weights must sum to at most 1");
  }
  std::vector<ComplexMatrix> kraus{std::sqrt(std::max(0.0, 1.0 - total)) * gate_matrix("i")};
  const char *names[] = {"x", "y", "z"};
  for (int k = 0; k < 3; ++k) {
    kraus.push_back(std::sqrt(mu[k]) * gate_matrix(names[k]));
  }
  return Channel::from_kraus(kraus);
}

Channel replacer(const DensityMatrix &sigma, std::size_t dim_in) {
  const HermitianMatrix flat = (1.0 / static_cast<double>(dim_in)) * HermitianMatrix::identity(dim_in);
  return Channel(dim_in, sigma.dim(), kron(sigma.mat(), flat));
}

Channel stochastic_mix(double mu, const Channel &n) {
  if (n.dim_in() != n.dim_out()) {
    throw DomainError("stochastic_mix: channel must map a system to itself");
  }
  return mix(mu, n, Channel::identity(n.dim_in()));
}

namespace {

Channel make_single_channel(std::string_view spec) {
  const auto parts = split_spec(spec);
  const std::string &name = parts[0];
  auto want = [&](std::size_t lo, std::size_t hi) {
    if (parts.size() < lo + 1 || parts.size() > hi + 1) {
      throw ParseError("channel '" + name + "' has the wrong number of parameters");
    }
  };
  if (name == "identity" || name == "id") {
    want(0, 1);
    return Channel::identity(parts.size() == 2 ? parse_count(parts[1], "dimension") : 2);
  }
  if (name == "unitary") {
    want(1, 1);
    std::string g = parts[1];
    std::transform(g.begin(), g.end(), g.begin(), [](unsigned char c) { return std::tolower(c); });
    return Channel::unitary(gate_matrix(g));
  }
  if (name == "depolarizing") {
    want(1, 2);
    return depolarizing(parse_real(parts[1], "mu"), parts.size() == 3 ? parse_count(parts[2], "dimension") : 2);
  }
  if (name == "dephasing") {
    want(1, 2);
    return dephasing(parse_real(parts[1], "mu"), parts.size() == 3 ? parse_count(parts[2], "dimension") : 2);
  }
  if (name == "amplitude_damping") {
    want(1, 1);
    return amplitude_damping(parse_real(parts[1], "nu"));
  }
  if (name == "erasure") {
    want(1, 2);
    return erasure(parse_real(parts[1], "mu"), parts.size() == 3 ? parse_count(parts[2], "dimension") : 2);
  }
  if (name == "pauli") {
    want(1, 1);
    std::array<double, 3> mu{};
    std::size_t start = 0;
    for (int k = 0; k < 3; ++k) {
      const std::size_t comma = parts[1].find(',', start);
      if ((k < 2) == (comma == std::string::npos)) {
        throw ParseError("pauli expects three comma-separated weights");
      }
      mu[k] = parse_real(parts[1].substr(start, comma - start), "pauli weight");
      start = comma + 1;
    }
    return pauli_channel(mu);
  }
  if (name == "replacer") {
    if (parts.size() < 2) {
      throw ParseError("replacer needs a state");
    }
    const std::string rest(spec.substr(spec.find(':') + 1));
    const DensityMatrix sigma = make_named_state(rest);
    return replacer(sigma, sigma.dim());
  }
  if (name == "noisy_t") {
    want(1, 1);
    return compose(depolarizing(parse_real(parts[1], "mu")), Channel::unitary(gate_matrix("t")));
  }
  throw ParseError("unknown channel '" + name + "'");
}

}  // namespace

Channel make_named_channel(std::string_view spec) {
  // Rightmost factor acts first.
  std::vector<std::string_view> factors;
  std::size_t start = 0;
  while (true) {
    const std::size_t star = spec.find('*', start);
    factors.push_back(spec.substr(start, star == std::string_view::npos ? std::string_view::npos : star - start));
    if (star == std::string_view::npos) {
      break;
    }
    start = star + 1;
  }
  Channel out = make_single_channel(factors.back());
  for (std::size_t k = factors.size() - 1; k-- > 0;) {
    out = compose(make_single_channel(factors[k]), out);
  }
  return out;
}

nlohmann::json channel_to_json(const Channel &n) {
  return {{"dim_in", n.dim_in()}, {"dim_out", n.dim_out()}, {"choi", matrix_to_json(n.choi())}};
}

Channel channel_from_json(const nlohmann::json &doc) {
  if (!doc.is_object() || !doc.contains("dim_in") || !doc.contains("dim_out") || !doc.contains("choi")) {
    throw ParseError("channel JSON needs dim_in, dim_out and choi");
  }
  try {
    return Channel(doc.at("dim_in").get<std::size_t>(), doc.at("dim_out").get<std::size_t>(),
                   hermitian_from_json(doc.at("choi")));
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("channel JSON: ") + e.what());
  }
}

}  // namespace freecomp
