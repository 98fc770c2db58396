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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "freecomp/errors.hpp"
#include "freecomp/matrix_io.hpp"
#include "freecomp/states.hpp"
#include "test_support.hpp"

using namespace freecomp;
using freecomp::testing::Rng;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

DensityMatrix sigma_bar() {
  return DensityMatrix(HermitianMatrix{{0.5, Complex{0.25, -0.25}}, {Complex{0.25, 0.25}, 0.5}});
}

}  // namespace

TEST_CASE("fidelity examples") {
  const DensityMatrix rho = noisy_t(0.3);
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fidelity(DensityMatrix(PureState::basis(2, 0)), DensityMatrix(PureState::basis(2, 1))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(fidelity(DensityMatrix(plus_state()), DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
}

TEST_CASE("fidelity matches an SVD oracle and is symmetric") {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const auto a = freecomp::testing::random_density(rng, n, 1 + static_cast<std::size_t>(trial % n));
    const auto b = freecomp::testing::random_density(rng, n);
    const double fab = fidelity(a, b);
    CHECK(fab == doctest::Approx(freecomp::testing::reference_fidelity(a, b)).epsilon(1e-9));
    CHECK(std::abs(fab - fidelity(b, a)) <= 1e-9);
    CHECK(fab >= 0.0);
    CHECK(fab <= 1.0);
  }
}

TEST_CASE("fidelity is 1 exactly when the trace distance vanishes") {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix a(freecomp::testing::random_density(rng, 3));
    const DensityMatrix b(freecomp::testing::random_density(rng, 3));
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(trace_distance(a, a) <= 1e-8);
    CHECK(fidelity(a, b) < 1.0 - 1e-8);
    CHECK(trace_distance(a, b) > 1e-8);
  }
}

TEST_CASE("Fuchs-van de Graaf with a pure argument") {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const DensityMatrix rho(freecomp::testing::random_density(rng, n));
    const PureState psi(freecomp::testing::random_pure(rng, n));
    const double f = fidelity(rho, DensityMatrix(psi));
    CHECK(f == doctest::Approx(pure_overlap(psi, rho)).epsilon(1e-9));
    const double td = trace_distance(rho, DensityMatrix(psi));
    CHECK(1.0 - f <= td + 1e-10);
    CHECK(td <= std::sqrt(1.0 - f) + 1e-10);
  }
}

TEST_CASE("pure_overlap examples") {
  CHECK(pure_overlap(plus_state(), DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
  CHECK(pure_overlap(t_state(), sigma_bar()) == doctest::Approx((2.0 + kSqrt2) / 4.0).epsilon(1e-12));
  CHECK(pure_overlap(t_state(), DensityMatrix(t_state())) == doctest::Approx(1.0));
  CHECK_THROWS_AS(pure_overlap(plus_state(), DensityMatrix::maximally_mixed(3)), DomainError);
}

TEST_CASE("sigma bar is the even mixture of |+> and S|+>") {
  const double h = 1.0 / kSqrt2;
  const PureState plus_i({h, Complex{0.0, h}});
  const HermitianMatrix mix = 0.5 * (plus_state().projector() + plus_i.projector());
  CHECK(max_abs_diff(mix.matrix(), sigma_bar().mat().matrix()) <= 1e-15);
}

TEST_CASE("named states") {
  SUBCASE("noisy_t(0) is |T><T|") {
    const DensityMatrix t0 = noisy_t(0.0);
    CHECK(max_abs_diff(t0.mat().matrix(), t_state().projector().matrix()) <= 1e-15);
    CHECK(max_eigenvalue(t0.mat()) == doctest::Approx(1.0));
  }
  SUBCASE("depolarized_plus(1) is maximally mixed") {
    CHECK(max_abs_diff(depolarized_plus(1.0).mat().matrix(), ComplexMatrix::identity(2) * Complex{0.5, 0.0}) <=
          1e-15);
  }
  SUBCASE("amplitude damped plus has the closed-form smallest eigenvalue") {
    for (int k = 1; k < 50; ++k) {
      const double nu = k / 50.0;
      const double expect = 0.5 * (1.0 - std::sqrt(1.0 - nu + nu * nu));
      CHECK(min_nonzero_eigenvalue(amp_damped_plus(nu)) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
  SUBCASE("out-of-range parameters") {
    CHECK_THROWS_AS(noisy_t(-0.1), DomainError);
    CHECK_THROWS_AS(depolarized_plus(1.5), DomainError);
    CHECK_THROWS_AS(amp_damped_plus(std::nan("")), DomainError);
    CHECK_THROWS_AS(gibbs_state(HermitianMatrix::identity(2), -1.0), DomainError);
  }
  SUBCASE("spec strings") {
    CHECK(max_abs_diff(make_named_state("depolarized-plus:0.3").mat().matrix(),
                       depolarized_plus(0.3).mat().matrix()) == 0.0);
    CHECK(max_abs_diff(make_named_state("Noisy_T:0.2").mat().matrix(), noisy_t(0.2).mat().matrix()) == 0.0);
    CHECK(make_named_state("coherence-gamma-zero-example").dim() == 4);
    CHECK(make_named_state("maximally_mixed:3").dim() == 3);
    CHECK(make_named_state("basis:4:2").mat()(2, 2).real() == 1.0);
    CHECK_THROWS_AS(make_named_state("nonsense"), ParseError);
    CHECK_THROWS_AS(make_named_state("noisy_t:abc"), ParseError);
    CHECK_THROWS_AS(make_named_state("noisy_t"), ParseError);
    CHECK_THROWS_AS(make_named_state("noisy_t:2"), DomainError);
  }
  SUBCASE("gibbs from a Hamiltonian file") {
    const auto path = std::filesystem::temp_directory_path() / "freecomp_test_ham.json";
    write_matrix_file(path, HermitianMatrix{{0.0, 0.0}, {0.0, 1.0}});
    const DensityMatrix g = make_named_state("gibbs:" + path.string() + ":2");
    const double z = 1.0 + std::exp(-2.0);
    CHECK(g.mat()(0, 0).real() == doctest::Approx(1.0 / z));
    CHECK(g.mat()(1, 1).real() == doctest::Approx(std::exp(-2.0) / z));
    std::filesystem::remove(path);
  }
}

TEST_CASE("gamma-zero example is a rank-two mixed state") {
  const auto ev = eig_hermitian(coherence_gamma_zero_example().mat()).eigenvalues;
  CHECK(ev[0] == doctest::Approx(0.5));
  CHECK(ev[1] == doctest::Approx(0.5));
  CHECK(std::abs(ev[2]) <= 1e-12);
  CHECK(std::abs(ev[3]) <= 1e-12);
}

TEST_CASE("min_nonzero_eigenvalue") {
  CHECK(min_nonzero_eigenvalue(DensityMatrix::maximally_mixed(2)) == doctest::Approx(0.5));
  for (double zeta : {0.01, 0.1, 0.25, 0.5}) {
    CHECK(min_nonzero_eigenvalue(noisy_t(zeta)) == doctest::Approx(zeta / 2.0).epsilon(1e-10));
  }
  CHECK(min_nonzero_eigenvalue(DensityMatrix(t_state())) == doctest::Approx(1.0));
}

TEST_CASE("named states stay valid over 1000 random parameter draws") {
  Rng rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int valid = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const double p = u(rng);
    HermitianMatrix m;
    switch (trial % 5) {
      case 0:
        m = noisy_t(p).mat();
        break;
      case 1:
        m = depolarized_plus(p).mat();
        break;
      case 2:
        m = dephased_plus(p).mat();
        break;
      case 3:
        m = amp_damped_plus(p).mat();
        break;
      default:
        m = gibbs_state(freecomp::testing::random_hermitian(rng, 3), 5.0 * p).mat();
        break;
    }
    // Independent recheck: Eigen spectrum and trace.
    const auto ev = freecomp::testing::reference_eigenvalues(m);
    if (ev.minCoeff() >= -1e-9 && std::abs(m.trace() - 1.0) <= 1e-9) {
      ++valid;
    }
  }
  CHECK(valid == 1000);
}

TEST_CASE("PureState and DensityMatrix reject invalid input") {
  CHECK_THROWS_AS(PureState({1.0, 1.0}), DomainError);
  CHECK(PureState::normalized({1.0, 1.0}).amplitudes()[0].real() == doctest::Approx(1.0 / kSqrt2));
  CHECK_THROWS_AS(DensityMatrix(HermitianMatrix::identity(2)), DomainError);
  CHECK_THROWS_AS(DensityMatrix(HermitianMatrix{{1.5, 0.0}, {0.0, -0.5}}), DomainError);
}
