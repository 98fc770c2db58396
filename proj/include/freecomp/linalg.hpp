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

#ifndef FREECOMP_LINALG_HPP
#define FREECOMP_LINALG_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace freecomp {

using Complex = std::complex<double>;

/// Dense row-major complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Row-wise literal, e.g. `ComplexMatrix{{1, 0}, {0, -1}}`.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |v><w| for column vectors v, w.
  static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double max_abs() const;
  double frobenius_norm() const;

  ComplexMatrix &operator+=(const ComplexMatrix &other);
  ComplexMatrix &operator-=(const ComplexMatrix &other);
  ComplexMatrix &operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

  /// Matrix-vector product.
  std::vector<Complex> apply(std::span<const Complex> v) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise deviation |a_ij - b_ij|; dimensions must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction symmetrizes the input, M <- (M + M^dagger)/2, after rejecting
/// inputs whose asymmetry exceeds kHermitianRejectTol (relative to
/// max(1, |M|_max)). Values are immutable once built.
class HermitianMatrix {
 public:
  static constexpr double kHermitianRejectTol = 1e-8;

  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix &m);
  HermitianMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
      : HermitianMatrix(ComplexMatrix(rows)) {}

  static HermitianMatrix zeros(std::size_t dim);
  static HermitianMatrix identity(std::size_t dim);
  static HermitianMatrix diagonal(std::span<const double> values);
  /// |v><v|.
  static HermitianMatrix projector(std::span<const Complex> v);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix &matrix() const { return m_; }
  const Complex &operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  double trace() const { return m_.trace().real(); }

  friend HermitianMatrix operator+(const HermitianMatrix &a, const HermitianMatrix &b);
  friend HermitianMatrix operator-(const HermitianMatrix &a, const HermitianMatrix &b);
  friend HermitianMatrix operator*(double s, const HermitianMatrix &a);
  friend HermitianMatrix operator*(const HermitianMatrix &a, double s) { return s * a; }

 private:
  ComplexMatrix m_;
};

/// Hilbert-Schmidt inner product tr(A B) for Hermitian A, B (always real).
double trace_product(const HermitianMatrix &a, const HermitianMatrix &b);

/// U M U^dagger, re-wrapped as Hermitian.
HermitianMatrix conjugate_by(const ComplexMatrix &u, const HermitianMatrix &m);

/// Eigendecomposition M = V diag(eigenvalues) V^dagger, eigenvalues descending.
struct Spectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;  // columns

  std::vector<Complex> eigenvector(std::size_t k) const;
};

/// Cyclic complex Jacobi. Converges when the off-diagonal Frobenius mass drops
/// below 1e-14 |M|_F; throws SolverError after 100 sweeps.
Spectrum eig_hermitian(const HermitianMatrix &m);

/// V f(diag) V^dagger.
HermitianMatrix apply_spectral(const Spectrum &s, const std::function<double(double)> &f);
HermitianMatrix apply_spectral(const HermitianMatrix &m, const std::function<double(double)> &f);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
HermitianMatrix kron(const HermitianMatrix &a, const HermitianMatrix &b);

/// Bipartite dimensions (dA, dB) of a matrix acting on A (x) B, A the slow index.
struct BipartiteDims {
  std::size_t a;
  std::size_t b;
};

enum class Subsystem { A, B };

/// Partial trace keeping subsystem `keep`.
HermitianMatrix partial_trace(const HermitianMatrix &m, BipartiteDims dims, Subsystem keep);
ComplexMatrix partial_trace(const ComplexMatrix &m, BipartiteDims dims, Subsystem keep);

/// Transpose of subsystem `on` only.
HermitianMatrix partial_transpose(const HermitianMatrix &m, BipartiteDims dims, Subsystem on);

/// Reorders tensor factors: factor k of the result is factor perm[k] of m.
/// dims lists the factor dimensions of m, leftmost most significant.
ComplexMatrix permute_subsystems(const ComplexMatrix &m, const std::vector<std::size_t> &dims,
                                 const std::vector<std::size_t> &perm);
HermitianMatrix permute_subsystems(const HermitianMatrix &m, const std::vector<std::size_t> &dims,
                                   const std::vector<std::size_t> &perm);

double min_eigenvalue(const HermitianMatrix &m);
double max_eigenvalue(const HermitianMatrix &m);
bool is_psd(const HermitianMatrix &m, double tol = 1e-9);

}  // namespace freecomp

#endif  // FREECOMP_LINALG_HPP
