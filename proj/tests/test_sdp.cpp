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

#include "freecomp/errors.hpp"
#include "freecomp/linalg.hpp"
#include "freecomp/sdp.hpp"
#include "test_support.hpp"

using namespace freecomp;
using freecomp::testing::Rng;

namespace {

SdpProblem singleton_problem(const HermitianMatrix &rho, const HermitianMatrix &sigma) {
  SdpProblem p(1);
  p.objective[0] = 1.0;
  LmiBlock &blk = p.add_block(rho);
  blk.coefficients[0] = sigma;
  return p;
}

HermitianMatrix dep_plus_matrix(double mu) {
  return HermitianMatrix{{0.5, (1.0 - mu) / 2.0}, {(1.0 - mu) / 2.0, 0.5}};
}

// max sum d_i  s.t.  rho - diag(d) >= 0, d >= 0.
SdpProblem diagonal_problem(const HermitianMatrix &rho) {
  const std::size_t d = rho.dim();
  SdpProblem p(d);
  LmiBlock &blk = p.add_block(rho);
  for (std::size_t i = 0; i < d; ++i) {
    p.objective[i] = 1.0;
    std::vector<double> e(d, 0.0);
    e[i] = 1.0;
    blk.coefficients[i] = HermitianMatrix::diagonal(e);
    p.set_nonnegative(i);
  }
  return p;
}

// max tr(G rho)  s.t.  0 <= G <= I, diag(G) = 1/2.
SdpProblem mio_problem(const HermitianMatrix &rho) {
  const auto basis = hermitian_basis(2);
  SdpProblem p(basis.size());
  LmiBlock &lower = p.add_block(HermitianMatrix::zeros(2));
  LmiBlock &upper = p.add_block(HermitianMatrix::identity(2));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    p.objective[i] = trace_product(basis[i], rho);
    p.blocks[0].coefficients[i] = -1.0 * basis[i];
    p.blocks[1].coefficients[i] = basis[i];
  }
  (void)lower;
  (void)upper;
  for (std::size_t k = 0; k < 2; ++k) {
    std::vector<double> row(basis.size(), 0.0);
    row[k] = 1.0;
    p.add_equality(row, 0.5);
  }
  return p;
}

}  // namespace

TEST_CASE("solve: free state has gamma 1") {
  const auto half = 0.5 * HermitianMatrix::identity(2);
  const auto sol = solve(singleton_problem(half, half));
  REQUIRE(sol.optimal());
  CHECK(sol.y[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(sol.primal_value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("solve: diagonal free component of depolarized plus") {
  const auto sol = solve(diagonal_problem(dep_plus_matrix(0.3)));
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(sol.gap <= 1e-8);
  for (double c : sol.certificate) {
    CHECK(c >= -1e-7);
  }
}

TEST_CASE("solve: MIO fidelity program") {
  const auto sol = solve(mio_problem(dep_plus_matrix(0.3)));
  REQUIRE(sol.optimal());
  CHECK(sol.primal_value == doctest::Approx(0.85).epsilon(1e-8));
  // Pinned diagonal survives elimination.
  CHECK(sol.y[0] == doctest::Approx(0.5));
  CHECK(sol.y[1] == doctest::Approx(0.5));
}

TEST_CASE("real_embed") {
  const Eigen::MatrixXd i4 = real_embed(HermitianMatrix::identity(2));
  CHECK((i4 - Eigen::MatrixXd::Identity(4, 4)).norm() == 0.0);

  const HermitianMatrix pauli_y{{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}};
  const Eigen::MatrixXd ey = real_embed(pauli_y);
  CHECK((ey - ey.transpose()).norm() == 0.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ey);
  const Eigen::VectorXd ev = es.eigenvalues();
  CHECK(ev(0) == doctest::Approx(-1.0));
  CHECK(ev(1) == doctest::Approx(-1.0));
  CHECK(ev(2) == doctest::Approx(1.0));
  CHECK(ev(3) == doctest::Approx(1.0));
}

TEST_CASE("real_embed preserves the PSD verdict on 1000 random matrices") {
  Rng rng(77);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 6);
    HermitianMatrix m = freecomp::testing::random_density(rng, n, 1 + static_cast<std::size_t>(trial % n));
    m = m - (0.02 * static_cast<double>(trial % 4)) * HermitianMatrix::identity(n);
    const double complex_min = freecomp::testing::reference_eigenvalues(m).minCoeff();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(real_embed(m), Eigen::EigenvaluesOnly);
    const double real_min = es.eigenvalues().minCoeff();
    CHECK(real_min == doctest::Approx(complex_min).epsilon(1e-10));
    if ((complex_min >= -1e-9) != (real_min >= -1e-9)) {
      ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("eliminate_equalities: parameter counts") {
  SUBCASE("y1 = 1 shifts F0 by F1") {
    SdpProblem p(2);
    p.objective = {1.0, 2.0};
    LmiBlock &blk = p.add_block(HermitianMatrix{{3.0, 0.0}, {0.0, 3.0}});
    blk.coefficients[0] = HermitianMatrix{{1.0, 0.0}, {0.0, 0.0}};
    blk.coefficients[1] = HermitianMatrix{{0.0, 0.0}, {0.0, 1.0}};
    p.add_equality({1.0, 0.0}, 1.0);
    const auto r = eliminate_equalities(p);
    REQUIRE(r.has_value());
    CHECK(r->problem.num_vars == 1);
    CHECK(r->problem.blocks[0].constant(0, 0).real() == doctest::Approx(2.0));
    CHECK(r->problem.blocks[0].constant(1, 1).real() == doctest::Approx(3.0));
    CHECK(r->problem.objective_offset == doctest::Approx(1.0));
    const auto y = r->lift({0.25});
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[1] == doctest::Approx(0.25));
  }
  SUBCASE("diag(G) = I/2 on a qubit leaves the two off-diagonal parameters") {
    const auto r = eliminate_equalities(mio_problem(dep_plus_matrix(0.5)));
    REQUIRE(r.has_value());
    CHECK(r->problem.num_vars == 2);
  }
  SUBCASE("PPT marginal equality on a two-qubit W") {
    // tr_out W = (tr W) I/2 on the reference factor; one row is implied by the trace.
    const auto basis = hermitian_basis(4);
    SdpProblem p(basis.size());
    const auto ref_basis = hermitian_basis(2);
    for (const auto &e : ref_basis) {
      std::vector<double> row(basis.size());
      for (std::size_t i = 0; i < basis.size(); ++i) {
        const auto marg = partial_trace(basis[i], {2, 2}, Subsystem::B);
        row[i] = trace_product(marg, e) - basis[i].trace() * trace_product(0.5 * HermitianMatrix::identity(2), e);
      }
      p.add_equality(row, 0.0);
    }
    // Independent rank of the constraint map.
    Eigen::MatrixXd a(4, 16);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 16; ++c) {
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = p.equalities[r].coefficients[c];
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    CHECK(lu.rank() == 3);
    const auto r = eliminate_equalities(p);
    REQUIRE(r.has_value());
    CHECK(r->problem.num_vars == 13);
  }
  SUBCASE("inconsistent equalities") {
    SdpProblem p(2);
    p.add_block(HermitianMatrix::identity(1));
    p.add_equality({1.0, 1.0}, 1.0);
    p.add_equality({2.0, 2.0}, 3.0);
    CHECK_FALSE(eliminate_equalities(p).has_value());
    CHECK(solve(p).status == SdpStatus::Infeasible);
  }
}

TEST_CASE("solve agrees with the bisection oracle on 200 singleton instances") {
  Rng rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const auto rho = freecomp::testing::random_density(rng, n);
    const auto sigma = freecomp::testing::random_density(rng, n, 1 + static_cast<std::size_t>(trial % n));
    const auto sol = solve(singleton_problem(rho, sigma));
    REQUIRE(sol.optimal());
    const double oracle = freecomp::testing::bisection_singleton_gamma(rho, sigma);
    CHECK(std::abs(sol.primal_value - oracle) <= 1e-7);
    // Independent feasibility recheck with the Jacobi-based test.
    CHECK(is_psd(rho - sol.y[0] * sigma, 1e-7));
    CHECK(sol.dual_value >= sol.primal_value - 1e-10);
  }
}

TEST_CASE("objective scaling scales the value and keeps the argmax") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = freecomp::testing::random_density(rng, 3);
    SdpProblem p = diagonal_problem(rho);
    const auto base = solve(p);
    REQUIRE(base.optimal());
    const double c = 0.5 + 0.5 * trial;
    for (auto &b : p.objective) {
      b *= c;
    }
    const auto scaled = solve(p);
    REQUIRE(scaled.optimal());
    CHECK(std::abs(scaled.primal_value - c * base.primal_value) <= 1e-7 * c);
    double total_base = 0.0;
    double total_scaled = 0.0;
    for (std::size_t i = 0; i < base.y.size(); ++i) {
      total_base += base.y[i];
      total_scaled += scaled.y[i];
    }
    CHECK(std::abs(total_base - total_scaled) <= 1e-7);
  }
}

TEST_CASE("infeasible and unbounded programs are detected") {
  SUBCASE("infeasible LMI") {
    // -I - y*0 >= 0 has no solution.
    SdpProblem p(1);
    p.objective[0] = 1.0;
    LmiBlock &blk = p.add_block(-1.0 * HermitianMatrix::identity(2));
    blk.coefficients[0] = HermitianMatrix{{1.0, 0.0}, {0.0, 0.0}};
    CHECK(solve(p).status == SdpStatus::Infeasible);
  }
  SUBCASE("unbounded ray") {
    // I + y*I >= 0 for all y >= -1, maximizing y.
    SdpProblem p(1);
    p.objective[0] = 1.0;
    LmiBlock &blk = p.add_block(HermitianMatrix::identity(2));
    blk.coefficients[0] = -1.0 * HermitianMatrix::identity(2);
    CHECK(solve(p).status == SdpStatus::Unbounded);
  }
  SUBCASE("unconstrained variable with nonzero objective") {
    SdpProblem p(2);
    p.objective = {0.0, 1.0};
    LmiBlock &blk = p.add_block(HermitianMatrix::identity(1));
    blk.coefficients[0] = HermitianMatrix{{1.0}};
    CHECK(solve(p).status == SdpStatus::Unbounded);
  }
  SUBCASE("unconstrained variable with zero objective is ignored") {
    SdpProblem p(2);
    p.objective = {1.0, 0.0};
    LmiBlock &blk = p.add_block(HermitianMatrix::identity(1));
    blk.coefficients[0] = HermitianMatrix{{1.0}};
    const auto sol = solve(p);
    REQUIRE(sol.optimal());
    CHECK(sol.primal_value == doctest::Approx(1.0));
  }
}

TEST_CASE("solve is deterministic") {
  Rng rng(5);
  const auto rho = freecomp::testing::random_density(rng, 4);
  const auto a = solve(diagonal_problem(rho));
  const auto b = solve(diagonal_problem(rho));
  CHECK(a.y == b.y);
  CHECK(a.primal_value == b.primal_value);
}

TEST_CASE("problem JSON round trip") {
  const SdpProblem p = mio_problem(dep_plus_matrix(0.2));
  const SdpProblem q = problem_from_json(problem_to_json(p));
  CHECK(q.num_vars == p.num_vars);
  CHECK(q.equalities.size() == p.equalities.size());
  CHECK(solve(q).primal_value == doctest::Approx(solve(p).primal_value));
  CHECK_THROWS_AS(problem_from_json(nlohmann::json{{"num_vars", 1}}), ParseError);
}

TEST_CASE("validate rejects malformed problems") {
  SdpProblem p(2);
  p.objective = {1.0};
  CHECK_THROWS_AS(p.validate(), DomainError);
}
