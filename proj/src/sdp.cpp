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

#include "freecomp/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include "freecomp/errors.hpp"
#include "freecomp/matrix_io.hpp"

namespace freecomp {

// ---------------------------------------------------------------------------
// Problem construction

void SdpProblem::validate() const {
  if (objective.size() != num_vars) {
    throw DomainError("SdpProblem: objective has " + std::to_string(objective.size()) +
                      " entries, expected " + std::to_string(num_vars));
  }
  if (!signs.empty() && signs.size() != num_vars) {
    throw DomainError("SdpProblem: sign vector length mismatch");
  }
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto &blk = blocks[k];
    if (blk.coefficients.size() != num_vars) {
      throw DomainError("SdpProblem: block " + std::to_string(k) + " has " +
                        std::to_string(blk.coefficients.size()) + " coefficient matrices, expected " +
                        std::to_string(num_vars));
    }
    for (const auto &f : blk.coefficients) {
      if (f.dim() != blk.dim()) {
        throw DomainError("SdpProblem: block " + std::to_string(k) + " mixes dimensions");
      }
    }
  }
  for (const auto &eq : equalities) {
    if (eq.coefficients.size() != num_vars) {
      throw DomainError("SdpProblem: equality row length mismatch");
    }
  }
}

LmiBlock &SdpProblem::add_block(const HermitianMatrix &constant) {
  LmiBlock blk{constant, std::vector<HermitianMatrix>(num_vars, HermitianMatrix::zeros(constant.dim()))};
  blocks.push_back(std::move(blk));
  return blocks.back();
}

void SdpProblem::set_nonnegative(std::size_t var) {
  if (signs.empty()) {
    signs.assign(num_vars, VarSign::Free);
  }
  signs.at(var) = VarSign::Nonnegative;
}

void SdpProblem::add_equality(std::vector<double> coefficients, double rhs) {
  equalities.push_back(LinearEquality{std::move(coefficients), rhs});
}

std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal:
      return "Optimal";
    case SdpStatus::Infeasible:
      return "Infeasible";
    case SdpStatus::Unbounded:
      return "Unbounded";
    case SdpStatus::IterLimit:
      return "IterLimit";
  }
  return "Unknown";
}

SolverOptions default_solver_options() {
  SolverOptions opts;
  if (const char *env = std::getenv("SOLVER_GAP_TOL")) {
    char *end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) {
      opts.gap_tol = v;
    }
  }
  return opts;
}

std::vector<HermitianMatrix> hermitian_basis(std::size_t n) {
  std::vector<HermitianMatrix> basis;
  basis.reserve(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    ComplexMatrix e(n, n);
    e(k, k) = 1.0;
    basis.emplace_back(e);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = k + 1; l < n; ++l) {
      ComplexMatrix re(n, n);
      re(k, l) = 1.0;
      re(l, k) = 1.0;
      basis.emplace_back(re);
      ComplexMatrix im(n, n);
      im(k, l) = Complex{0.0, -1.0};
      im(l, k) = Complex{0.0, 1.0};
      basis.emplace_back(im);
    }
  }
  return basis;
}

// ---------------------------------------------------------------------------
// Real embedding

Eigen::MatrixXd real_embed(const HermitianMatrix &h) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXd out(2 * n, 2 * n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const Complex z = h(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
      out(r, c) = z.real();
      out(r, c + n) = -z.imag();
      out(r + n, c) = z.imag();
      out(r + n, c + n) = z.real();
    }
  }
  return out;
}

RealLmiBlock real_embed(const LmiBlock &block) {
  RealLmiBlock out;
  out.constant = real_embed(block.constant);
  out.coefficients.reserve(block.coefficients.size());
  for (const auto &f : block.coefficients) {
    out.coefficients.push_back(real_embed(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equality elimination

std::vector<double> ReducedProblem::lift(const std::vector<double> &z) const {
  std::vector<double> y = particular;
  for (Eigen::Index i = 0; i < basis.rows(); ++i) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < basis.cols(); ++j) {
      s += basis(i, j) * z[static_cast<std::size_t>(j)];
    }
    y[static_cast<std::size_t>(i)] += s;
  }
  return y;
}

namespace {

constexpr double kPivotTol = 1e-10;

HermitianMatrix combine(const std::vector<HermitianMatrix> &mats, const Eigen::VectorXd &weights,
                        const HermitianMatrix *base, std::size_t dim) {
  ComplexMatrix acc = base ? base->matrix() : ComplexMatrix::zeros(dim, dim);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    const double w = weights(static_cast<Eigen::Index>(i));
    if (w == 0.0) {
      continue;
    }
    auto dst = acc.entries();
    const auto src = mats[i].matrix().entries();
    for (std::size_t k = 0; k < dst.size(); ++k) {
      dst[k] += w * src[k];
    }
  }
  return HermitianMatrix(acc);
}

}  // namespace

std::optional<ReducedProblem> eliminate_equalities(const SdpProblem &input) {
  input.validate();
  const std::size_t m = input.num_vars;

  // Sign constraints become 1x1 blocks: 0 - (-1) y_i >= 0.
  SdpProblem with_signs = input;
  with_signs.signs.clear();
  if (!input.signs.empty()) {
    for (std::size_t i = 0; i < m; ++i) {
      if (input.signs[i] == VarSign::Nonnegative) {
        LmiBlock &blk = with_signs.add_block(HermitianMatrix::zeros(1));
        blk.coefficients[i] = HermitianMatrix{{-1.0}};
      }
    }
  }

  const std::size_t k = input.equalities.size();
  Eigen::MatrixXd aug(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m + 1));
  double scale = 1.0;
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < m; ++c) {
      aug(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = input.equalities[r].coefficients[c];
      scale = std::max(scale, std::abs(input.equalities[r].coefficients[c]));
    }
    aug(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m)) = input.equalities[r].rhs;
  }

  // Reduced row echelon form with partial pivoting.
  std::vector<std::size_t> pivot_cols;
  Eigen::Index row = 0;
  const auto rows = static_cast<Eigen::Index>(k);
  for (std::size_t col = 0; col < m && row < rows; ++col) {
    const auto c = static_cast<Eigen::Index>(col);
    Eigen::Index best = row;
    for (Eigen::Index r = row + 1; r < rows; ++r) {
      if (std::abs(aug(r, c)) > std::abs(aug(best, c))) {
        best = r;
      }
    }
    if (std::abs(aug(best, c)) <= kPivotTol * scale) {
      continue;
    }
    aug.row(row).swap(aug.row(best));
    aug.row(row) /= aug(row, c);
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r != row && aug(r, c) != 0.0) {
        aug.row(r) -= aug(r, c) * aug.row(row);
      }
    }
    pivot_cols.push_back(col);
    ++row;
  }
  for (Eigen::Index r = row; r < rows; ++r) {
    if (std::abs(aug(r, static_cast<Eigen::Index>(m))) > 1e-9 * scale) {
      return std::nullopt;
    }
  }

  std::vector<bool> is_pivot(m, false);
  for (auto c : pivot_cols) {
    is_pivot[c] = true;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m; ++c) {
    if (!is_pivot[c]) {
      free_cols.push_back(c);
    }
  }

  ReducedProblem out;
  out.particular.assign(m, 0.0);
  for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
    out.particular[pivot_cols[r]] = aug(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m));
  }
  out.basis = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(free_cols.size()));
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    out.basis(static_cast<Eigen::Index>(free_cols[j]), jj) = 1.0;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
      out.basis(static_cast<Eigen::Index>(pivot_cols[r]), jj) =
          -aug(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(free_cols[j]));
    }
  }

  const std::size_t reduced = free_cols.size();
  SdpProblem &p = out.problem;
  p.num_vars = reduced;
  p.objective.assign(reduced, 0.0);
  p.objective_offset = input.objective_offset;
  for (std::size_t i = 0; i < m; ++i) {
    p.objective_offset += input.objective[i] * out.particular[i];
  }
  for (std::size_t j = 0; j < reduced; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      s += out.basis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * input.objective[i];
    }
    p.objective[j] = s;
  }

  Eigen::VectorXd y0(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    y0(static_cast<Eigen::Index>(i)) = -out.particular[i];
  }
  for (const auto &blk : with_signs.blocks) {
    LmiBlock nb;
    nb.constant = combine(blk.coefficients, y0, &blk.constant, blk.dim());
    nb.coefficients.reserve(reduced);
    for (std::size_t j = 0; j < reduced; ++j) {
      nb.coefficients.push_back(
          combine(blk.coefficients, out.basis.col(static_cast<Eigen::Index>(j)), nullptr, blk.dim()));
    }
    p.blocks.push_back(std::move(nb));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Interior point solver

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using Blocks = std::vector<MatrixXd>;

struct SparseCoeff {
  Index var;
  MatrixXd mat;
};

// Real cone program:  max b.y  s.t.  C_k - sum_i y_i A_ki = Z_k >= 0, with
// dual  min <C, X>  s.t.  A(X) = b, X >= 0.
struct ConeProgram {
  Index m = 0;
  VectorXd b;
  Blocks c;
  std::vector<std::vector<SparseCoeff>> a;  // per block, nonzero coefficients only

  VectorXd apply_a(const Blocks &x) const {
    VectorXd out = VectorXd::Zero(m);
    for (std::size_t k = 0; k < a.size(); ++k) {
      for (const auto &sc : a[k]) {
        out(sc.var) += sc.mat.cwiseProduct(x[k]).sum();
      }
    }
    return out;
  }

  Blocks apply_at(const VectorXd &y) const {
    Blocks out;
    out.reserve(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
      MatrixXd acc = MatrixXd::Zero(c[k].rows(), c[k].cols());
      for (const auto &sc : a[k]) {
        acc += y(sc.var) * sc.mat;
      }
      out.push_back(std::move(acc));
    }
    return out;
  }
};

double inner(const Blocks &x, const Blocks &y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    s += x[k].cwiseProduct(y[k]).sum();
  }
  return s;
}

double norm(const Blocks &x) { return std::sqrt(inner(x, x)); }

Blocks axpy(const Blocks &x, double alpha, const Blocks &y) {
  Blocks out = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    out[k] += alpha * y[k];
  }
  return out;
}

MatrixXd symmetrize(const MatrixXd &m) { return 0.5 * (m + m.transpose()); }

// Nesterov-Todd scaling of one block: r^T Z r = r^{-1} X r^{-T} = diag(lambda).
struct NtScaling {
  MatrixXd r;
  MatrixXd rinv;
  VectorXd lambda;
  MatrixXd w;  // r r^T, satisfies W Z W = X
};

bool nt_scaling(const MatrixXd &x, const MatrixXd &z, NtScaling &out) {
  Eigen::LLT<MatrixXd> lx(x);
  Eigen::LLT<MatrixXd> lz(z);
  if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) {
    return false;
  }
  const MatrixXd l_x = lx.matrixL();
  const MatrixXd l_z = lz.matrixL();
  Eigen::JacobiSVD<MatrixXd> svd(l_z.transpose() * l_x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  out.lambda = svd.singularValues();
  if (out.lambda.minCoeff() <= 0.0) {
    return false;
  }
  const VectorXd inv_sqrt = out.lambda.cwiseSqrt().cwiseInverse();
  out.r = l_x * svd.matrixV() * inv_sqrt.asDiagonal();
  out.rinv = inv_sqrt.asDiagonal() * svd.matrixU().transpose() * l_z.transpose();
  out.w = out.r * out.r.transpose();
  return true;
}

// Largest alpha with lambda + alpha*d >= 0, for d in the scaled frame.
double max_step(const VectorXd &lambda, const MatrixXd &d) {
  const VectorXd s = lambda.cwiseSqrt().cwiseInverse();
  const MatrixXd scaled = symmetrize(s.asDiagonal() * d * s.asDiagonal());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(scaled, Eigen::EigenvaluesOnly);
  const double mn = es.eigenvalues().minCoeff();
  return mn < 0.0 ? -1.0 / mn : std::numeric_limits<double>::infinity();
}

struct Direction {
  Blocks dx;
  Blocks dz;
  VectorXd dy;
  double dtau = 0.0;
  double dkappa = 0.0;
};

struct Iterate {
  Blocks x;
  Blocks z;
  VectorXd y;
  double tau = 1.0;
  double kappa = 1.0;
};

enum class Outcome { Converged, Infeasible, Unbounded, Stalled, IterLimit };

struct ConeResult {
  Iterate it;
  Outcome outcome = Outcome::IterLimit;
  int iterations = 0;
};

ConeResult run_interior_point(const ConeProgram &prog, const SolverOptions &opts) {
  const std::size_t nblocks = prog.c.size();
  Index nu = 0;
  for (const auto &ck : prog.c) {
    nu += ck.rows();
  }

  Iterate it;
  it.y = VectorXd::Zero(prog.m);
  for (const auto &ck : prog.c) {
    it.x.push_back(MatrixXd::Identity(ck.rows(), ck.cols()));
    it.z.push_back(MatrixXd::Identity(ck.rows(), ck.cols()));
  }

  const double norm_b = prog.b.norm();
  const double norm_c = norm(prog.c);
  // Aim well past the caller's tolerances; a stall near the end still leaves
  // an iterate that the final check accepts.
  const double inner_feas = std::min(1e-13, opts.feas_tol * 1e-6);
  const double inner_gap = opts.gap_tol * 1e-5;
  constexpr double kCertTol = 1e-8;

  ConeResult result;
  int stalled_steps = 0;
  // Best iterate so far, scored against the caller's tolerances. Degenerate
  // problems can wander once they are as accurate as roundoff allows.
  Iterate best = it;
  double best_merit = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int iter = 0; iter <= opts.max_iterations; ++iter) {
    result.iterations = iter;

    const VectorXd ax = prog.apply_a(it.x);
    const Blocks aty = prog.apply_at(it.y);
    const VectorXd rp = ax - it.tau * prog.b;
    Blocks rd = aty;
    for (std::size_t k = 0; k < nblocks; ++k) {
      rd[k] += it.z[k] - it.tau * prog.c[k];
    }
    const double cx = inner(prog.c, it.x);
    const double by = prog.b.dot(it.y);
    const double rg = cx - by + it.kappa;
    const double mu = (inner(it.x, it.z) + it.tau * it.kappa) / static_cast<double>(nu + 1);

    // Convergence on the tau-normalized point.
    const double pres = rp.norm() / it.tau / (1.0 + norm_b);
    const double dres = norm(rd) / it.tau / (1.0 + norm_c);
    const double gap = std::abs(cx - by) / it.tau;
    if (pres <= inner_feas && dres <= inner_feas && gap <= inner_gap) {
      result.outcome = Outcome::Converged;
      break;
    }
    const double merit = std::max({pres / opts.feas_tol, dres / opts.feas_tol, gap / opts.gap_tol});
    if (merit < 0.5 * best_merit) {
      since_best = 0;
    } else {
      ++since_best;
    }
    if (merit < best_merit) {
      best_merit = merit;
      best = it;
    }
    if (best_merit <= 1e-2 && since_best >= 8) {
      result.outcome = Outcome::Stalled;
      break;
    }
    // Certificates of infeasibility from the embedding.
    if (cx < 0.0 && ax.norm() <= kCertTol * -cx && it.tau <= kCertTol * -cx) {
      result.outcome = Outcome::Infeasible;
      break;
    }
    if (by > 0.0) {
      Blocks ray = aty;
      for (std::size_t k = 0; k < nblocks; ++k) {
        ray[k] += it.z[k];
      }
      if (norm(ray) <= kCertTol * by && it.tau <= kCertTol * by) {
        result.outcome = Outcome::Unbounded;
        break;
      }
    }
    if (iter == opts.max_iterations) {
      result.outcome = Outcome::IterLimit;
      break;
    }

    std::vector<NtScaling> sc(nblocks);
    bool scaling_ok = true;
    for (std::size_t k = 0; k < nblocks && scaling_ok; ++k) {
      scaling_ok = nt_scaling(it.x[k], it.z[k], sc[k]);
    }
    if (!scaling_ok) {
      result.outcome = Outcome::Stalled;
      break;
    }

    // Schur complement M_ij = <A_i, W A_j W>.
    MatrixXd schur = MatrixXd::Zero(prog.m, prog.m);
    Blocks wcw(nblocks);
    for (std::size_t k = 0; k < nblocks; ++k) {
      const MatrixXd &w = sc[k].w;
      wcw[k] = w * prog.c[k] * w;
      for (const auto &cj : prog.a[k]) {
        const MatrixXd p = w * cj.mat * w;
        for (const auto &ci : prog.a[k]) {
          schur(ci.var, cj.var) += ci.mat.cwiseProduct(p).sum();
        }
      }
    }
    schur = symmetrize(schur);
    Eigen::LDLT<MatrixXd> ldlt(schur);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      const double reg = 1e-13 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
      ldlt.compute(schur + reg * MatrixXd::Identity(prog.m, prog.m));
      if (ldlt.info() != Eigen::Success) {
        result.outcome = Outcome::Stalled;
        break;
      }
    }
    // Two rounds of iterative refinement; the Schur matrix gets badly
    // conditioned near degenerate optima.
    auto schur_solve = [&](const VectorXd &rhs) {
      VectorXd x = ldlt.solve(rhs);
      for (int r = 0; r < 2; ++r) {
        x += ldlt.solve(rhs - schur * x);
      }
      return x;
    };
    const VectorXd a_c = prog.apply_a(wcw);
    const VectorXd v = schur_solve(a_c + prog.b);
    const double c_wcw = inner(prog.c, wcw);
    const double denom = v.dot(a_c) - c_wcw - prog.b.dot(v) - it.kappa / it.tau;

    auto solve_direction = [&](double eta, double sigma_mu, const Blocks *corr, double corr_tk) {
      Direction d;
      Blocks g(nblocks);
      for (std::size_t k = 0; k < nblocks; ++k) {
        const VectorXd &lam = sc[k].lambda;
        const Index n = lam.size();
        MatrixXd t = corr ? MatrixXd(-(*corr)[k]) : MatrixXd(MatrixXd::Zero(n, n));
        for (Index i = 0; i < n; ++i) {
          t(i, i) += sigma_mu - lam(i) * lam(i);
        }
        MatrixXd s(n, n);
        for (Index i = 0; i < n; ++i) {
          for (Index j = 0; j < n; ++j) {
            s(i, j) = 2.0 * t(i, j) / (lam(i) + lam(j));
          }
        }
        g[k] = sc[k].r * s * sc[k].r.transpose() + eta * sc[k].w * rd[k] * sc[k].w;
      }
      const VectorXd u = schur_solve(-eta * rp - prog.apply_a(g));
      const double s_kappa = sigma_mu - it.tau * it.kappa - corr_tk;
      const double num = -eta * rg - inner(prog.c, g) - u.dot(a_c) + prog.b.dot(u) - s_kappa / it.tau;
      d.dtau = num / denom;
      d.dy = u + d.dtau * v;
      const Blocks at_dy = prog.apply_at(d.dy);
      d.dx.resize(nblocks);
      d.dz.resize(nblocks);
      for (std::size_t k = 0; k < nblocks; ++k) {
        const MatrixXd &w = sc[k].w;
        d.dx[k] = symmetrize(g[k] + w * at_dy[k] * w - d.dtau * wcw[k]);
        d.dz[k] = symmetrize(-eta * rd[k] - at_dy[k] + d.dtau * prog.c[k]);
      }
      d.dkappa = (s_kappa - it.kappa * d.dtau) / it.tau;
      return d;
    };

    auto step_length = [&](const Direction &d, std::vector<MatrixXd> *sx, std::vector<MatrixXd> *sz) {
      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < nblocks; ++k) {
        MatrixXd dxs = symmetrize(sc[k].rinv * d.dx[k] * sc[k].rinv.transpose());
        MatrixXd dzs = symmetrize(sc[k].r.transpose() * d.dz[k] * sc[k].r);
        alpha = std::min(alpha, max_step(sc[k].lambda, dxs));
        alpha = std::min(alpha, max_step(sc[k].lambda, dzs));
        if (sx) {
          (*sx)[k] = std::move(dxs);
          (*sz)[k] = std::move(dzs);
        }
      }
      if (d.dtau < 0.0) {
        alpha = std::min(alpha, -it.tau / d.dtau);
      }
      if (d.dkappa < 0.0) {
        alpha = std::min(alpha, -it.kappa / d.dkappa);
      }
      return alpha;
    };

    // Predictor.
    const Direction aff = solve_direction(1.0, 0.0, nullptr, 0.0);
    std::vector<MatrixXd> dxs(nblocks), dzs(nblocks);
    const double alpha_aff = std::min(1.0, step_length(aff, &dxs, &dzs));
    const double one_minus = std::max(0.0, 1.0 - alpha_aff);
    const double sigma = std::min(1.0, one_minus * one_minus * one_minus);

    // Corrector with the second-order term of the scaled complementarity.
    Blocks corr(nblocks);
    for (std::size_t k = 0; k < nblocks; ++k) {
      corr[k] = 0.5 * (dxs[k] * dzs[k] + dzs[k] * dxs[k]);
    }
    const Direction dir = solve_direction(1.0 - sigma, sigma * mu, &corr, aff.dtau * aff.dkappa);
    double alpha = std::min(1.0, opts.step_fraction * step_length(dir, nullptr, nullptr));

    if (!(alpha > 1e-12) || !std::isfinite(alpha)) {
      if (++stalled_steps >= 3) {
        result.outcome = Outcome::Stalled;
        break;
      }
      continue;
    }
    stalled_steps = 0;
    // Roundoff can push a nearly singular block out of the cone; back off
    // until both iterates still factor.
    Blocks nx, nz;
    for (int tries = 0; tries < 40; ++tries, alpha *= 0.5) {
      nx = axpy(it.x, alpha, dir.dx);
      nz = axpy(it.z, alpha, dir.dz);
      bool inside = true;
      for (std::size_t k = 0; k < nblocks && inside; ++k) {
        nx[k] = symmetrize(nx[k]);
        nz[k] = symmetrize(nz[k]);
        inside = Eigen::LLT<MatrixXd>(nx[k]).info() == Eigen::Success &&
                 Eigen::LLT<MatrixXd>(nz[k]).info() == Eigen::Success;
      }
      if (inside) {
        break;
      }
    }
    it.x = std::move(nx);
    it.z = std::move(nz);
    it.y += alpha * dir.dy;
    it.tau += alpha * dir.dtau;
    it.kappa += alpha * dir.dkappa;
  }
  const bool use_best = (result.outcome == Outcome::Stalled || result.outcome == Outcome::IterLimit) &&
                        std::isfinite(best_merit);
  result.it = use_best ? std::move(best) : std::move(it);
  return result;
}

}  // namespace

SdpSolution solve(const SdpProblem &problem, double gap_tol, double feas_tol) {
  SolverOptions opts = default_solver_options();
  opts.gap_tol = gap_tol;
  opts.feas_tol = feas_tol;
  return solve(problem, opts);
}

SdpSolution solve(const SdpProblem &problem, const SolverOptions &opts) {
  problem.validate();
  SdpSolution sol;

  const auto reduced = eliminate_equalities(problem);
  if (!reduced) {
    sol.status = SdpStatus::Infeasible;
    sol.y.assign(problem.num_vars, 0.0);
    sol.primal_value = -std::numeric_limits<double>::infinity();
    sol.dual_value = -std::numeric_limits<double>::infinity();
    return sol;
  }
  const SdpProblem &rp = reduced->problem;
  const auto m = static_cast<Index>(rp.num_vars);

  // Variables no block constrains are unbounded along a nonzero objective
  // and irrelevant otherwise; the latter are dropped (held at zero) so the
  // Schur system stays regular.
  std::vector<Index> active;
  for (Index i = 0; i < m; ++i) {
    bool used = false;
    for (const auto &blk : rp.blocks) {
      used = used || blk.coefficients[static_cast<std::size_t>(i)].matrix().max_abs() != 0.0;
    }
    if (used) {
      active.push_back(i);
    } else if (rp.objective[static_cast<std::size_t>(i)] != 0.0) {
      sol.status = SdpStatus::Unbounded;
      sol.y = reduced->particular;
      sol.primal_value = std::numeric_limits<double>::infinity();
      sol.dual_value = std::numeric_limits<double>::infinity();
      return sol;
    }
  }

  ConeProgram prog;
  prog.m = static_cast<Index>(active.size());
  prog.b = VectorXd::Zero(prog.m);
  for (Index j = 0; j < prog.m; ++j) {
    prog.b(j) = rp.objective[static_cast<std::size_t>(active[static_cast<std::size_t>(j)])];
  }
  for (const auto &blk : rp.blocks) {
    prog.c.push_back(real_embed(blk.constant));
    std::vector<SparseCoeff> coeffs;
    for (Index j = 0; j < prog.m; ++j) {
      const auto &f = blk.coefficients[static_cast<std::size_t>(active[static_cast<std::size_t>(j)])];
      if (f.matrix().max_abs() != 0.0) {
        coeffs.push_back(SparseCoeff{j, real_embed(f)});
      }
    }
    prog.a.push_back(std::move(coeffs));
  }

  std::vector<double> z(static_cast<std::size_t>(m), 0.0);
  Outcome outcome = Outcome::Converged;
  double dual_value = rp.objective_offset;
  double dual_residual = 0.0;
  if (!prog.c.empty()) {
    const ConeResult res = run_interior_point(prog, opts);
    sol.iterations = res.iterations;
    outcome = res.outcome;
    const double tau = res.it.tau;
    for (Index j = 0; j < prog.m; ++j) {
      z[static_cast<std::size_t>(active[static_cast<std::size_t>(j)])] = res.it.y(j) / tau;
    }
    Blocks xn = res.it.x;
    for (auto &xk : xn) {
      xk /= tau;
    }
    dual_value += inner(prog.c, xn);
    dual_residual = (prog.apply_a(xn) - prog.b).norm() / (1.0 + prog.b.norm());
  }

  sol.y = reduced->lift(z);
  sol.primal_value = problem.objective_offset;
  for (std::size_t i = 0; i < problem.num_vars; ++i) {
    sol.primal_value += problem.objective[i] * sol.y[i];
  }
  sol.dual_value = dual_value;
  sol.gap = sol.dual_value - sol.primal_value;

  // Independent feasibility certificate on the caller's blocks.
  bool feasible = true;
  for (const auto &blk : problem.blocks) {
    ComplexMatrix s = blk.constant.matrix();
    for (std::size_t i = 0; i < problem.num_vars; ++i) {
      s -= blk.coefficients[i].matrix() * Complex{sol.y[i], 0.0};
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(real_embed(HermitianMatrix(s)), Eigen::EigenvaluesOnly);
    const double mn = es.eigenvalues().minCoeff();
    sol.certificate.push_back(mn);
    feasible = feasible && mn >= -opts.feas_tol;
  }
  if (!problem.signs.empty()) {
    for (std::size_t i = 0; i < problem.num_vars; ++i) {
      if (problem.signs[i] == VarSign::Nonnegative && sol.y[i] < -opts.feas_tol) {
        feasible = false;
      }
    }
  }

  switch (outcome) {
    case Outcome::Infeasible:
      sol.status = SdpStatus::Infeasible;
      return sol;
    case Outcome::Unbounded:
      sol.status = SdpStatus::Unbounded;
      return sol;
    default:
      break;
  }
  const bool gap_ok = std::abs(sol.gap) <= opts.gap_tol;
  const bool dual_ok = dual_residual <= opts.feas_tol;
  sol.status = (feasible && gap_ok && dual_ok) ? SdpStatus::Optimal : SdpStatus::IterLimit;
  return sol;
}

// ---------------------------------------------------------------------------
// Debug serialization

nlohmann::json problem_to_json(const SdpProblem &problem) {
  using nlohmann::json;
  json blocks = json::array();
  for (const auto &blk : problem.blocks) {
    json coeffs = json::array();
    for (const auto &f : blk.coefficients) {
      coeffs.push_back(matrix_to_json(f));
    }
    blocks.push_back(json{{"constant", matrix_to_json(blk.constant)}, {"coefficients", std::move(coeffs)}});
  }
  json signs = json::array();
  for (const auto s : problem.signs) {
    signs.push_back(s == VarSign::Nonnegative ? "nonnegative" : "free");
  }
  json eqs = json::array();
  for (const auto &eq : problem.equalities) {
    eqs.push_back(json{{"a", eq.coefficients}, {"c", eq.rhs}});
  }
  return json{{"num_vars", problem.num_vars},
              {"objective", problem.objective},
              {"objective_offset", problem.objective_offset},
              {"signs", std::move(signs)},
              {"blocks", std::move(blocks)},
              {"equalities", std::move(eqs)}};
}

SdpProblem problem_from_json(const nlohmann::json &doc) {
  try {
    SdpProblem p(doc.at("num_vars").get<std::size_t>());
    p.objective = doc.at("objective").get<std::vector<double>>();
    p.objective_offset = doc.value("objective_offset", 0.0);
    for (const auto &s : doc.value("signs", nlohmann::json::array())) {
      const auto name = s.get<std::string>();
      if (name != "free" && name != "nonnegative") {
        throw ParseError("SDP JSON: unknown sign '" + name + "'");
      }
      p.signs.push_back(name == "nonnegative" ? VarSign::Nonnegative : VarSign::Free);
    }
    for (const auto &b : doc.at("blocks")) {
      LmiBlock blk;
      blk.constant = hermitian_from_json(b.at("constant"));
      for (const auto &f : b.at("coefficients")) {
        blk.coefficients.push_back(hermitian_from_json(f));
      }
      p.blocks.push_back(std::move(blk));
    }
    for (const auto &e : doc.value("equalities", nlohmann::json::array())) {
      p.add_equality(e.at("a").get<std::vector<double>>(), e.at("c").get<double>());
    }
    p.validate();
    return p;
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("SDP JSON: ") + e.what());
  }
}

}  // namespace freecomp
