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

#include "freecomp/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "freecomp/errors.hpp"

namespace freecomp {

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw DomainError("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                      " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    if (row.size() != cols_) {
      throw DomainError("ComplexMatrix: ragged initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) {
    m(k, k) = 1.0;
  }
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    m(k, k) = values[k];
  }
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
  ComplexMatrix m(v.size(), w.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    for (std::size_t c = 0; c < w.size(); ++c) {
      m(r, c) = v[r] * std::conj(w[c]);
    }
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = std::conj((*this)(r, c));
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out(c, r) = (*this)(r, c);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto &z : out.data_) {
    z = std::conj(z);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) {
    t += (*this)(k, k);
  }
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto &z : data_) {
    m = std::max(m, std::abs(z));
  }
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto &z : data_) {
    s += std::norm(z);
  }
  return std::sqrt(s);
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DomainError("ComplexMatrix +: dimension mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] += other.data_[k];
  }
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw DomainError("ComplexMatrix -: dimension mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) {
    data_[k] -= other.data_[k];
  }
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) {
  for (auto &z : data_) {
    z *= scale;
  }
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) {
    throw DomainError("ComplexMatrix *: inner dimension mismatch");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{0.0, 0.0}) {
        continue;
      }
      for (std::size_t c = 0; c < b.cols(); ++c) {
        out(r, c) += ark * b(k, c);
      }
    }
  }
  return out;
}

std::vector<Complex> ComplexMatrix::apply(std::span<const Complex> v) const {
  if (v.size() != cols_) {
    throw DomainError("ComplexMatrix::apply: dimension mismatch");
  }
  std::vector<Complex> out(rows_, Complex{0.0, 0.0});
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      out[r] += (*this)(r, c) * v[c];
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("max_abs_diff: dimension mismatch");
  }
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(const ComplexMatrix &m) : m_(m.rows(), m.cols()) {
  if (!m.is_square() || m.rows() == 0) {
    throw DomainError("HermitianMatrix: expected a nonempty square matrix, got " +
                      std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  const double scale = std::max(1.0, m.max_abs());
  const std::size_t n = m.rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = r; c < n; ++c) {
      const Complex upper = m(r, c);
      const Complex lower = std::conj(m(c, r));
      if (std::abs(upper - lower) > kHermitianRejectTol * scale) {
        throw DomainError("HermitianMatrix: asymmetry " + std::to_string(std::abs(upper - lower)) +
                          " at (" + std::to_string(r) + "," + std::to_string(c) + ")");
      }
      const Complex avg = 0.5 * (upper + lower);
      m_(r, c) = avg;
      m_(c, r) = std::conj(avg);
    }
    m_(r, r) = Complex{m_(r, r).real(), 0.0};
  }
}

HermitianMatrix HermitianMatrix::zeros(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix::zeros(dim, dim));
}

HermitianMatrix HermitianMatrix::identity(std::size_t dim) {
  return HermitianMatrix(ComplexMatrix::identity(dim));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  return HermitianMatrix(ComplexMatrix::diagonal(values));
}

HermitianMatrix HermitianMatrix::projector(std::span<const Complex> v) {
  return HermitianMatrix(ComplexMatrix::outer(v, v));
}

HermitianMatrix operator+(const HermitianMatrix &a, const HermitianMatrix &b) {
  return HermitianMatrix(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix &a, const HermitianMatrix &b) {
  return HermitianMatrix(a.m_ - b.m_);
}

HermitianMatrix operator*(double s, const HermitianMatrix &a) {
  return HermitianMatrix(a.m_ * Complex{s, 0.0});
}

double trace_product(const HermitianMatrix &a, const HermitianMatrix &b) {
  if (a.dim() != b.dim()) {
    throw DomainError("trace_product: dimension mismatch");
  }
  // tr(AB) = sum_ij A_ij B_ji = sum_ij A_ij conj(B_ij).
  double s = 0.0;
  const auto ea = a.matrix().entries();
  const auto eb = b.matrix().entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    s += (ea[k] * std::conj(eb[k])).real();
  }
  return s;
}

HermitianMatrix conjugate_by(const ComplexMatrix &u, const HermitianMatrix &m) {
  return HermitianMatrix(u * m.matrix() * u.adjoint());
}

// ---------------------------------------------------------------------------
// Eigendecomposition

std::vector<Complex> Spectrum::eigenvector(std::size_t k) const {
  std::vector<Complex> v(eigenvectors.rows());
  for (std::size_t r = 0; r < v.size(); ++r) {
    v[r] = eigenvectors(r, k);
  }
  return v;
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalRelTol = 1e-14;

double off_diagonal_norm(const ComplexMatrix &a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) {
        s += std::norm(a(r, c));
      }
    }
  }
  return std::sqrt(s);
}

// Applies A <- G^dagger A G and V <- V G for the plane rotation G acting on
// (p, q) that annihilates A(p, q).
void rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) {
    return;
  }
  const Complex phase = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // G has G_pp = G_qq = c, G_pq = s*phase, G_qp = -s*conj(phase).
  const Complex gpq = s * phase;
  const Complex gqp = -s * std::conj(phase);
  const std::size_t n = a.rows();

  // A <- A G (columns p and q).
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * gqp;
    a(k, q) = akp * gpq + akq * c;
  }
  // A <- G^dagger A (rows p and q).
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(gqp) * aqk;
    a(q, k) = std::conj(gpq) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = Complex{a(p, p).real(), 0.0};
  a(q, q) = Complex{a(q, q).real(), 0.0};

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * gqp;
    v(k, q) = vkp * gpq + vkq * c;
  }
}

}  // namespace

Spectrum eig_hermitian(const HermitianMatrix &m) {
  const std::size_t n = m.dim();
  ComplexMatrix a = m.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = kOffDiagonalRelTol * a.frobenius_norm();

  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        rotate(a, v, p, q);
      }
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) {
    throw SolverError("eig_hermitian: Jacobi iteration did not converge in " +
                      std::to_string(kMaxSweeps) + " sweeps (dim " + std::to_string(n) + ")");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  Spectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) {
      out.eigenvectors(r, k) = v(r, order[k]);
    }
  }
  return out;
}

HermitianMatrix apply_spectral(const Spectrum &s, const std::function<double(double)> &f) {
  const std::size_t n = s.eigenvalues.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(s.eigenvalues[k]);
    if (fk == 0.0) {
      continue;
    }
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = s.eigenvectors(r, k) * fk;
      for (std::size_t c = 0; c < n; ++c) {
        out(r, c) += vr * std::conj(s.eigenvectors(c, k));
      }
    }
  }
  return HermitianMatrix(out);
}

HermitianMatrix apply_spectral(const HermitianMatrix &m, const std::function<double(double)> &f) {
  return apply_spectral(eig_hermitian(m), f);
}

// ---------------------------------------------------------------------------
// Tensor structure

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra) {
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const Complex x = a(ra, ca);
      if (x == Complex{0.0, 0.0}) {
        continue;
      }
      for (std::size_t rb = 0; rb < b.rows(); ++rb) {
        for (std::size_t cb = 0; cb < b.cols(); ++cb) {
          out(ra * b.rows() + rb, ca * b.cols() + cb) = x * b(rb, cb);
        }
      }
    }
  }
  return out;
}

HermitianMatrix kron(const HermitianMatrix &a, const HermitianMatrix &b) {
  return HermitianMatrix(kron(a.matrix(), b.matrix()));
}

namespace {

void check_bipartite(std::size_t dim, BipartiteDims dims, const char *op) {
  if (dims.a == 0 || dims.b == 0 || dims.a * dims.b != dim) {
    throw DomainError(std::string(op) + ": dims (" + std::to_string(dims.a) + "," +
                      std::to_string(dims.b) + ") do not factor dimension " + std::to_string(dim));
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix &m, BipartiteDims dims, Subsystem keep) {
  if (!m.is_square()) {
    throw DomainError("partial_trace: matrix not square");
  }
  check_bipartite(m.rows(), dims, "partial_trace");
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  if (keep == Subsystem::A) {
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i) {
      for (std::size_t j = 0; j < da; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < db; ++k) {
          s += m(i * db + k, j * db + k);
        }
        out(i, j) = s;
      }
    }
    return out;
  }
  ComplexMatrix out(db, db);
  for (std::size_t i = 0; i < db; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < da; ++k) {
        s += m(k * db + i, k * db + j);
      }
      out(i, j) = s;
    }
  }
  return out;
}

HermitianMatrix partial_trace(const HermitianMatrix &m, BipartiteDims dims, Subsystem keep) {
  return HermitianMatrix(partial_trace(m.matrix(), dims, keep));
}

HermitianMatrix partial_transpose(const HermitianMatrix &m, BipartiteDims dims, Subsystem on) {
  check_bipartite(m.dim(), dims, "partial_transpose");
  const std::size_t da = dims.a;
  const std::size_t db = dims.b;
  ComplexMatrix out(m.dim(), m.dim());
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t k = 0; k < db; ++k) {
      for (std::size_t j = 0; j < da; ++j) {
        for (std::size_t l = 0; l < db; ++l) {
          const Complex x = m(i * db + k, j * db + l);
          if (on == Subsystem::B) {
            out(i * db + l, j * db + k) = x;
          } else {
            out(j * db + k, i * db + l) = x;
          }
        }
      }
    }
  }
  return HermitianMatrix(out);
}

namespace {

std::vector<std::size_t> split_index(std::size_t idx, const std::vector<std::size_t> &dims) {
  std::vector<std::size_t> digits(dims.size());
  for (std::size_t k = dims.size(); k-- > 0;) {
    digits[k] = idx % dims[k];
    idx /= dims[k];
  }
  return digits;
}

}  // namespace

ComplexMatrix permute_subsystems(const ComplexMatrix &m, const std::vector<std::size_t> &dims,
                                 const std::vector<std::size_t> &perm) {
  if (perm.size() != dims.size()) {
    throw DomainError("permute_subsystems: perm and dims differ in length");
  }
  std::size_t total = 1;
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t k = 0; k < dims.size(); ++k) {
    total *= dims[k];
    if (perm[k] >= dims.size() || seen[perm[k]]) {
      throw DomainError("permute_subsystems: not a permutation");
    }
    seen[perm[k]] = true;
  }
  if (!m.is_square() || m.rows() != total) {
    throw DomainError("permute_subsystems: dimension mismatch");
  }
  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) {
    new_dims[k] = dims[perm[k]];
  }
  // Map old flat index -> new flat index.
  std::vector<std::size_t> map(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    const auto d = split_index(idx, dims);
    std::size_t out = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      out = out * new_dims[k] + d[perm[k]];
    }
    map[idx] = out;
  }
  ComplexMatrix r(total, total);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = 0; j < total; ++j) {
      r(map[i], map[j]) = m(i, j);
    }
  }
  return r;
}

HermitianMatrix permute_subsystems(const HermitianMatrix &m, const std::vector<std::size_t> &dims,
                                   const std::vector<std::size_t> &perm) {
  return HermitianMatrix(permute_subsystems(m.matrix(), dims, perm));
}

// ---------------------------------------------------------------------------
// Spectral predicates

double min_eigenvalue(const HermitianMatrix &m) { return eig_hermitian(m).eigenvalues.back(); }

double max_eigenvalue(const HermitianMatrix &m) { return eig_hermitian(m).eigenvalues.front(); }

bool is_psd(const HermitianMatrix &m, double tol) { return min_eigenvalue(m) >= -tol; }

}  // namespace freecomp
