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

#include "freecomp/free_sets.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <numbers>

#include "freecomp/errors.hpp"
#include "freecomp/matrix_io.hpp"

namespace freecomp {

namespace {

constexpr double kSupportTol = 1e-9;

void check_dim(std::size_t got, const FreeSetDescriptor &f, const char *what) {
  if (got != f.dim()) {
    throw DomainError(std::string(what) + ": object dimension " + std::to_string(got) +
                      " does not match free set '" + f.label() + "' of dimension " + std::to_string(f.dim()));
  }
}

SdpSolution solve_or_throw(const SdpProblem &p, const SolverOptions &opts, const char *what) {
  SdpSolution sol = solve(p, opts);
  if (!sol.optimal()) {
    throw SolverError(std::string(what) + ": solver returned " + to_string(sol.status));
  }
  return sol;
}

HermitianMatrix combine(const std::vector<HermitianMatrix> &basis, const std::vector<double> &y, std::size_t offset) {
  HermitianMatrix out = HermitianMatrix::zeros(basis[0].dim());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    out = out + y[offset + k] * basis[k];
  }
  return out;
}

// Rows a_k = tr(B_k (I_out (x) e)) for each Hermitian basis element e of the
// reference, i.e. the coordinates of tr_out X.
std::vector<std::vector<double>> marginal_rows(const std::vector<HermitianMatrix> &basis, const PptChoi &ppt,
                                               std::vector<double> *ref_traces) {
  const auto ref_basis = hermitian_basis(ppt.dim_in);
  const HermitianMatrix iout = HermitianMatrix::identity(ppt.dim_out);
  std::vector<std::vector<double>> rows;
  for (const auto &e : ref_basis) {
    const HermitianMatrix lifted = kron(iout, e);
    std::vector<double> row(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      row[k] = trace_product(basis[k], lifted);
    }
    rows.push_back(std::move(row));
    if (ref_traces != nullptr) {
      ref_traces->push_back(e.trace());
    }
  }
  return rows;
}

GammaResult gamma_diagonal(const HermitianMatrix &rho, const SolverOptions &opts) {
  const std::size_t d = rho.dim();
  SdpProblem p(d);
  LmiBlock &blk = p.add_block(rho);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    blk.coefficients[i] = HermitianMatrix::diagonal(e);
    p.objective[i] = 1.0;
    p.set_nonnegative(i);
  }
  const SdpSolution sol = solve_or_throw(p, opts, "free component (diagonal)");
  GammaResult r;
  r.method = GammaMethod::Sdp;
  r.gamma = std::clamp(sol.primal_value, 0.0, 1.0);
  r.solver_gap = sol.gap;
  std::vector<double> diag(d);
  for (std::size_t i = 0; i < d; ++i) {
    diag[i] = std::max(sol.y[i], 0.0);
  }
  r.witness = HermitianMatrix::diagonal(diag);
  return r;
}

GammaResult gamma_hull(const HermitianMatrix &rho, const VertexHull &hull, const SolverOptions &opts) {
  const std::size_t n = hull.vertices.size();
  SdpProblem p(n);
  LmiBlock &blk = p.add_block(rho);
  for (std::size_t j = 0; j < n; ++j) {
    blk.coefficients[j] = hull.vertices[j];
    p.objective[j] = 1.0;
    p.set_nonnegative(j);
  }
  SdpSolution sol = solve(p, opts);
  GammaResult r;
  r.method = GammaMethod::VertexLp;
  if (sol.optimal()) {
    r.gamma = std::clamp(sol.primal_value, 0.0, 1.0);
    r.solver_gap = sol.gap;
  } else {
    // rho inside the hull leaves the program above with no interior, and the
    // solver can stall. Settle membership with a shifted program that has one:
    // min t s.t. rho + t I - sum q_j sigma_j >= 0, sum q_j = 1, q >= 0.
    SdpProblem m(n + 1);
    LmiBlock &mb = m.add_block(rho);
    std::vector<double> row(n + 1, 1.0);
    row[n] = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      mb.coefficients[j] = hull.vertices[j];
      m.set_nonnegative(j);
    }
    mb.coefficients[n] = -1.0 * HermitianMatrix::identity(rho.dim());
    m.objective[n] = -1.0;
    m.add_equality(row, 1.0);
    const SdpSolution shifted = solve(m, opts);
    const double t = shifted.optimal() ? shifted.y[n] : INFINITY;
    if (!(t <= opts.feas_tol)) {
      throw SolverError("free component (vertex hull): solver returned " + to_string(sol.status));
    }
    sol = shifted;
    r.gamma = 1.0;
    r.solver_gap = std::max(t, 0.0) * static_cast<double>(rho.dim());
  }
  HermitianMatrix w = HermitianMatrix::zeros(rho.dim());
  for (std::size_t j = 0; j < n; ++j) {
    const double q = std::max(sol.y[j], 0.0);
    r.vertex_weights.push_back(q);
    w = w + q * hull.vertices[j];
  }
  r.witness = w;
  return r;
}

HermitianMatrix inverse_sqrt_on_support(const HermitianMatrix &rho) {
  return apply_spectral(rho, [](double x) { return x > 1e-10 ? 1.0 / std::sqrt(x) : 0.0; });
}

bool support_inside(const HermitianMatrix &sigma, const HermitianMatrix &rho) {
  const HermitianMatrix outside = HermitianMatrix::identity(rho.dim()) - support_projector(rho);
  return trace_product(outside, sigma) <= kSupportTol;
}

GammaResult gamma_gibbs(const HermitianMatrix &rho, const GibbsSingleton &g) {
  GammaResult r;
  r.method = GammaMethod::ClosedForm;
  if (!support_inside(g.sigma, rho)) {
    r.support_contained = false;
    r.gamma = 0.0;
    return r;
  }
  const HermitianMatrix s = inverse_sqrt_on_support(rho);
  const double lmax = max_eigenvalue(conjugate_by(s.matrix(), g.sigma));
  r.gamma = std::clamp(1.0 / lmax, 0.0, 1.0);
  r.witness = r.gamma * g.sigma;
  return r;
}

// max tr W  s.t.  rho >= W >= 0,  W^{T_out} >= 0,  tr_out W = (tr W) I/d_in.
GammaResult gamma_ppt(const HermitianMatrix &rho, const PptChoi &ppt, const SolverOptions &opts) {
  const std::size_t dim = ppt.dim_in * ppt.dim_out;
  const auto basis = hermitian_basis(dim);
  SdpProblem p(basis.size());
  p.add_block(HermitianMatrix::zeros(dim));
  p.add_block(rho);
  p.add_block(HermitianMatrix::zeros(dim));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    p.objective[k] = basis[k].trace();
    p.blocks[0].coefficients[k] = -1.0 * basis[k];
    p.blocks[1].coefficients[k] = basis[k];
    p.blocks[2].coefficients[k] = -1.0 * partial_transpose(basis[k], {ppt.dim_out, ppt.dim_in}, Subsystem::A);
  }
  std::vector<double> ref_traces;
  const auto rows = marginal_rows(basis, ppt, &ref_traces);
  const double inv_d = 1.0 / static_cast<double>(ppt.dim_in);
  for (std::size_t l = 0; l < rows.size(); ++l) {
    std::vector<double> row = rows[l];
    for (std::size_t k = 0; k < basis.size(); ++k) {
      row[k] -= basis[k].trace() * ref_traces[l] * inv_d;
    }
    p.add_equality(row, 0.0);
  }
  const SdpSolution sol = solve_or_throw(p, opts, "free component (PPT)");
  GammaResult r;
  r.method = GammaMethod::Sdp;
  r.gamma = std::clamp(sol.primal_value, 0.0, 1.0);
  r.solver_gap = sol.gap;
  r.witness = combine(basis, sol.y, 0);
  return r;
}

// max <psi|X|psi>  s.t.  X >= 0,  X^{T_out} >= 0,  tr_out X = I/d_in.
double overlap_ppt(const PureState &psi, const PptChoi &ppt, const SolverOptions &opts) {
  const std::size_t dim = ppt.dim_in * ppt.dim_out;
  const auto basis = hermitian_basis(dim);
  const HermitianMatrix target = psi.projector();
  SdpProblem p(basis.size());
  p.add_block(HermitianMatrix::zeros(dim));
  p.add_block(HermitianMatrix::zeros(dim));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    p.objective[k] = trace_product(target, basis[k]);
    p.blocks[0].coefficients[k] = -1.0 * basis[k];
    p.blocks[1].coefficients[k] = -1.0 * partial_transpose(basis[k], {ppt.dim_out, ppt.dim_in}, Subsystem::A);
  }
  std::vector<double> ref_traces;
  const auto rows = marginal_rows(basis, ppt, &ref_traces);
  for (std::size_t l = 0; l < rows.size(); ++l) {
    p.add_equality(rows[l], ref_traces[l] / static_cast<double>(ppt.dim_in));
  }
  const SdpSolution sol = solve_or_throw(p, opts, "max overlap (PPT)");
  return std::clamp(sol.primal_value, 0.0, 1.0);
}

std::vector<HermitianMatrix> vertices_of(const FreeSetDescriptor &f) {
  if (const auto *d = std::get_if<DiagonalSet>(&f.kind())) {
    std::vector<HermitianMatrix> v;
    for (std::size_t k = 0; k < d->dim; ++k) {
      v.push_back(PureState::basis(d->dim, k).projector());
    }
    return v;
  }
  if (const auto *h = std::get_if<VertexHull>(&f.kind())) {
    return h->vertices;
  }
  if (const auto *g = std::get_if<GibbsSingleton>(&f.kind())) {
    return {g->sigma};
  }
  throw DomainError("free set '" + f.label() + "' has no finite vertex list");
}

}  // namespace

FreeSetDescriptor::FreeSetDescriptor(Kind kind, std::string label) : kind_(std::move(kind)), label_(std::move(label)) {
  if (const auto *d = std::get_if<DiagonalSet>(&kind_)) {
    if (d->dim == 0) {
      throw DomainError("diagonal free set needs a positive dimension");
    }
  } else if (const auto *h = std::get_if<VertexHull>(&kind_)) {
    if (h->vertices.empty()) {
      throw DomainError("vertex hull is empty");
    }
    for (const auto &v : h->vertices) {
      if (v.dim() != h->vertices[0].dim()) {
        throw DomainError("vertex hull vertices differ in dimension");
      }
      DensityMatrix check(v);
    }
  } else if (const auto *g = std::get_if<GibbsSingleton>(&kind_)) {
    DensityMatrix check(g->sigma);
  } else if (const auto *p = std::get_if<PptChoi>(&kind_)) {
    if (p->dim_in == 0 || p->dim_out == 0) {
      throw DomainError("PPT free set needs positive dimensions");
    }
  }
}

FreeSetDescriptor FreeSetDescriptor::coherence(std::size_t dim) {
  return {DiagonalSet{dim}, "coherence:" + std::to_string(dim)};
}

FreeSetDescriptor FreeSetDescriptor::stabilizer_1q() {
  std::vector<HermitianMatrix> v;
  for (const auto &s : stabilizer_states_1q()) {
    v.push_back(s.projector());
  }
  return {VertexHull{std::move(v)}, "stab1q"};
}

FreeSetDescriptor FreeSetDescriptor::clifford_1q() {
  std::vector<HermitianMatrix> v;
  for (const auto &c : clifford_group_1q()) {
    v.push_back(c.choi());
  }
  return {VertexHull{std::move(v)}, "clifford1q"};
}

FreeSetDescriptor FreeSetDescriptor::gibbs(const DensityMatrix &sigma) {
  return {GibbsSingleton{sigma.mat()}, "gibbs"};
}

FreeSetDescriptor FreeSetDescriptor::ppt(std::size_t dim_in, std::size_t dim_out) {
  return {PptChoi{dim_in, dim_out}, "ppt:" + std::to_string(dim_in) + "," + std::to_string(dim_out)};
}

FreeSetDescriptor FreeSetDescriptor::hull(std::vector<HermitianMatrix> vertices, std::string label) {
  return {VertexHull{std::move(vertices)}, std::move(label)};
}

std::size_t FreeSetDescriptor::dim() const {
  struct Visitor {
    std::size_t operator()(const DiagonalSet &d) const { return d.dim; }
    std::size_t operator()(const VertexHull &h) const { return h.vertices[0].dim(); }
    std::size_t operator()(const GibbsSingleton &g) const { return g.sigma.dim(); }
    std::size_t operator()(const PptChoi &p) const { return p.dim_in * p.dim_out; }
  };
  return std::visit(Visitor{}, kind_);
}

std::string to_string(GammaMethod m) {
  switch (m) {
    case GammaMethod::ClosedForm:
      return "closed_form";
    case GammaMethod::Sdp:
      return "sdp";
    case GammaMethod::VertexLp:
      return "vertex_lp";
  }
  return "unknown";
}

GammaResult free_component_state(const DensityMatrix &rho, const FreeSetDescriptor &f, const SolverOptions &opts) {
  check_dim(rho.dim(), f, "free_component_state");
  const HermitianMatrix &m = rho.mat();
  if (std::holds_alternative<DiagonalSet>(f.kind())) {
    return gamma_diagonal(m, opts);
  }
  if (const auto *h = std::get_if<VertexHull>(&f.kind())) {
    return gamma_hull(m, *h, opts);
  }
  if (const auto *g = std::get_if<GibbsSingleton>(&f.kind())) {
    return gamma_gibbs(m, *g);
  }
  return gamma_ppt(m, std::get<PptChoi>(f.kind()), opts);
}

GammaResult free_component_channel(const Channel &n, const FreeSetDescriptor &f, const SolverOptions &opts) {
  if (const auto *p = std::get_if<PptChoi>(&f.kind())) {
    if (p->dim_in != n.dim_in() || p->dim_out != n.dim_out()) {
      throw DomainError("free_component_channel: PPT set dimensions do not match the channel");
    }
  }
  return free_component_state(n.choi_state(), f, opts);
}

double max_overlap_pure(const PureState &psi, const FreeSetDescriptor &f, const SolverOptions &opts) {
  check_dim(psi.dim(), f, "max_overlap_pure");
  if (std::holds_alternative<DiagonalSet>(f.kind())) {
    double best = 0.0;
    for (const auto &a : psi.amplitudes()) {
      best = std::max(best, std::norm(a));
    }
    return best;
  }
  if (const auto *p = std::get_if<PptChoi>(&f.kind())) {
    return overlap_ppt(psi, *p, opts);
  }
  // Linear objective over a hull: some vertex attains the maximum.
  double best = 0.0;
  for (const auto &v : vertices_of(f)) {
    best = std::max(best, pure_overlap(psi, DensityMatrix(v)));
  }
  return std::min(best, 1.0);
}

double max_overlap_choi_unitary(const Channel &u, const FreeSetDescriptor &f, const SolverOptions &opts) {
  if (!is_unitary_channel(u, 1e-7)) {
    throw DomainError("max_overlap_choi_unitary: target is not a unitary channel");
  }
  const Spectrum s = eig_hermitian(u.choi());
  return max_overlap_pure(PureState::normalized(s.eigenvector(0)), f, opts);
}

double mio_optimal_fidelity(const DensityMatrix &rho, std::size_t m, const SolverOptions &opts) {
  if (m != rho.dim() || m < 2) {
    throw DomainError("mio_optimal_fidelity: target dimension must equal the state dimension (>= 2)");
  }
  const auto basis = hermitian_basis(m);
  SdpProblem p(basis.size());
  p.add_block(HermitianMatrix::zeros(m));
  p.add_block(HermitianMatrix::identity(m));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    p.objective[k] = trace_product(basis[k], rho.mat());
    p.blocks[0].coefficients[k] = -1.0 * basis[k];
    p.blocks[1].coefficients[k] = basis[k];
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> e(m, 0.0);
    e[i] = 1.0;
    const HermitianMatrix eii = HermitianMatrix::diagonal(e);
    std::vector<double> row(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      row[k] = trace_product(basis[k], eii);
    }
    p.add_equality(row, 1.0 / static_cast<double>(m));
  }
  const SdpSolution sol = solve_or_throw(p, opts, "mio_optimal_fidelity");
  return std::clamp(sol.primal_value, 0.0, 1.0);
}

std::vector<ComplexMatrix> clifford_unitaries_1q() {
  const ComplexMatrix gens[] = {gate_matrix("h"), gate_matrix("s")};
  auto same_up_to_phase = [](const ComplexMatrix &a, const ComplexMatrix &b) {
    return std::abs((a.adjoint() * b).trace()) > 2.0 - 1e-9;
  };
  std::vector<ComplexMatrix> found{ComplexMatrix::identity(2)};
  std::deque<std::pair<ComplexMatrix, int>> queue{{ComplexMatrix::identity(2), 0}};
  constexpr int kMaxDepth = 12;
  while (!queue.empty()) {
    auto [u, depth] = queue.front();
    queue.pop_front();
    if (depth == kMaxDepth) {
      continue;
    }
    for (const auto &g : gens) {
      ComplexMatrix next = g * u;
      bool seen = false;
      for (const auto &f : found) {
        if (same_up_to_phase(f, next)) {
          seen = true;
          break;
        }
      }
      if (!seen) {
        found.push_back(next);
        queue.emplace_back(std::move(next), depth + 1);
      }
    }
  }
  return found;
}

std::vector<Channel> clifford_group_1q() {
  std::vector<Channel> out;
  for (const auto &u : clifford_unitaries_1q()) {
    out.push_back(Channel::unitary(u));
  }
  return out;
}

std::vector<PureState> stabilizer_states_1q() {
  const double h = 1.0 / std::numbers::sqrt2;
  const Complex i{0.0, h};
  return {PureState({1.0, 0.0}), PureState({0.0, 1.0}), PureState({h, h}),
          PureState({h, -h}),    PureState({h, i}),     PureState({h, -i})};
}

double d_min_resource(const DensityMatrix &rho, const FreeSetDescriptor &f) {
  check_dim(rho.dim(), f, "d_min_resource");
  const HermitianMatrix proj = support_projector(rho.mat());
  double best = 0.0;
  for (const auto &v : vertices_of(f)) {
    best = std::max(best, trace_product(proj, v));
  }
  if (best <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return std::max(0.0, -std::log2(std::min(best, 1.0)));
}

double d_max(const HermitianMatrix &sigma, const HermitianMatrix &rho) {
  if (sigma.dim() != rho.dim()) {
    throw DomainError("d_max: dimension mismatch");
  }
  if (!support_inside(sigma, rho)) {
    return std::numeric_limits<double>::infinity();
  }
  const HermitianMatrix s = inverse_sqrt_on_support(rho);
  return std::log2(max_eigenvalue(conjugate_by(s.matrix(), sigma)));
}

double squeezed_overlap(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("squeezing parameter must be finite and nonnegative");
  }
  return 1.0 / std::cosh(r);
}

FreeSetDescriptor parse_free_set(std::string_view spec) {
  const auto parts = split_spec(spec);
  const std::string &name = parts[0];
  if (name == "coherence" && parts.size() == 2) {
    return FreeSetDescriptor::coherence(parse_count(parts[1], "dimension"));
  }
  if (name == "stab1q" && parts.size() == 1) {
    return FreeSetDescriptor::stabilizer_1q();
  }
  if (name == "clifford1q" && parts.size() == 1) {
    return FreeSetDescriptor::clifford_1q();
  }
  if (name == "gibbs" && parts.size() == 3) {
    return FreeSetDescriptor::gibbs(gibbs_state(read_hermitian_file(parts[1]), parse_real(parts[2], "beta")));
  }
  if (name == "ppt" && parts.size() == 2) {
    const std::size_t comma = parts[1].find(',');
    if (comma == std::string::npos) {
      throw ParseError("ppt free set expects 'ppt:dA,dB'");
    }
    return FreeSetDescriptor::ppt(parse_count(parts[1].substr(0, comma), "dA"),
                                  parse_count(parts[1].substr(comma + 1), "dB"));
  }
  if (name == "hull" && parts.size() == 2) {
    std::ifstream in(parts[1]);
    if (!in) {
      throw ParseError("cannot open hull file '" + parts[1] + "'");
    }
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception &e) {
      throw ParseError(std::string("hull file: ") + e.what());
    }
    if (!doc.is_array()) {
      throw ParseError("hull file must hold a JSON list of matrices");
    }
    std::vector<HermitianMatrix> v;
    for (const auto &m : doc) {
      v.push_back(hermitian_from_json(m));
    }
    return FreeSetDescriptor::hull(std::move(v), "hull:" + parts[1]);
  }
  throw ParseError("unknown free set '" + std::string(spec) + "'");
}

}  // namespace freecomp
