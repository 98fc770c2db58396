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
#include <fstream>
#include <numbers>
#include <numeric>
#include <algorithm>

#include "freecomp/errors.hpp"
#include "freecomp/free_sets.hpp"
#include "freecomp/matrix_io.hpp"
#include "test_support.hpp"

using namespace freecomp;
using freecomp::testing::Rng;

namespace {

const double kSqrt2 = std::numbers::sqrt2;

double gamma_of(const DensityMatrix &rho, const FreeSetDescriptor &f) { return free_component_state(rho, f).gamma; }

double gamma_of(const Channel &n, const FreeSetDescriptor &f) { return free_component_channel(n, f).gamma; }

// Random element of the Clifford hull.
Channel random_clifford_mixture(Rng &rng, const std::vector<Channel> &cliffords, int terms) {
  std::uniform_int_distribution<std::size_t> pick(0, cliffords.size() - 1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Channel out = cliffords[pick(rng)];
  for (int k = 1; k < terms; ++k) {
    out = mix(1.0 / (k + 1.0), cliffords[pick(rng)], out);
  }
  (void)unif;
  return out;
}

ComplexMatrix random_permutation(Rng &rng, std::size_t d) {
  std::vector<std::size_t> p(d);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    m(p[i], i) = 1.0;
  }
  return m;
}

}  // namespace

TEST_CASE("free component of states: worked examples") {
  const auto coh2 = FreeSetDescriptor::coherence(2);
  for (double mu : {0.1, 0.3, 0.7}) {
    const GammaResult r = free_component_state(depolarized_plus(mu), coh2);
    CHECK(r.gamma == doctest::Approx(mu).epsilon(1e-7));
    CHECK(r.weight() == doctest::Approx(1.0 - mu).epsilon(1e-7));
    CHECK(r.method == GammaMethod::Sdp);
    REQUIRE(r.witness.has_value());
    CHECK(is_psd(depolarized_plus(mu).mat() - *r.witness, 1e-7));
  }
  const auto stab = FreeSetDescriptor::stabilizer_1q();
  for (double zeta : {0.05, 0.1, 0.2, 0.25}) {
    const GammaResult r = free_component_state(noisy_t(zeta), stab);
    CHECK(r.gamma >= (2.0 + kSqrt2) * zeta - 1e-7);
    CHECK(r.method == GammaMethod::VertexLp);
    double total = 0.0;
    for (double q : r.vertex_weights) {
      CHECK(q >= 0.0);
      total += q;
    }
    CHECK(total == doctest::Approx(r.gamma).epsilon(1e-9));
  }
  CHECK(gamma_of(coherence_gamma_zero_example(), FreeSetDescriptor::coherence(4)) <= 1e-7);
  CHECK(gamma_of(DensityMatrix(plus_state()), coh2) <= 1e-7);
  CHECK_THROWS_AS(free_component_state(noisy_t(0.1), FreeSetDescriptor::coherence(3)), DomainError);
}

TEST_CASE("free component of channels: worked examples") {
  const auto cliff = FreeSetDescriptor::clifford_1q();
  const Channel t = Channel::unitary(gate_matrix("t"));
  CHECK(gamma_of(t, cliff) <= 1e-7);
  CHECK(gamma_of(compose(depolarizing(0.5), t), cliff) == doctest::Approx(1.0).epsilon(1e-7));
  const Channel h = Channel::unitary(gate_matrix("h"));
  for (double mu : {0.1, 0.35, 0.6}) {
    CHECK(gamma_of(mix(mu, h, t), cliff) >= mu - 1e-7);
  }
  // Free channel: Gamma 1.
  CHECK(gamma_of(h, cliff) == doctest::Approx(1.0).epsilon(1e-7));
  // Channel and Choi-state routes coincide.
  const Channel n = compose(depolarizing(0.2), t);
  CHECK(gamma_of(n, cliff) == doctest::Approx(gamma_of(n.choi_state(), cliff)).epsilon(1e-12));
}

TEST_CASE("max overlap") {
  const auto coh2 = FreeSetDescriptor::coherence(2);
  CHECK(max_overlap_pure(plus_state(), coh2) == doctest::Approx(0.5));
  const auto stab = FreeSetDescriptor::stabilizer_1q();
  CHECK(max_overlap_pure(t_state(), stab) == doctest::Approx(1.0 / (4.0 - 2.0 * kSqrt2)).epsilon(1e-12));
  CHECK(max_overlap_pure(plus_state(), stab) == doctest::Approx(1.0));
  CHECK(max_overlap_pure(PureState::basis(2, 1), coh2) == doctest::Approx(1.0));

  const auto cliff = FreeSetDescriptor::clifford_1q();
  CHECK(max_overlap_choi_unitary(Channel::identity(2), cliff) == doctest::Approx(1.0).epsilon(1e-12));
  // Brute force: |tr(T^dag U_j)|^2 / 4 over the group.
  const ComplexMatrix t = gate_matrix("t");
  double brute = 0.0;
  for (const auto &u : clifford_unitaries_1q()) {
    brute = std::max(brute, std::norm((t.adjoint() * u).trace()) / 4.0);
  }
  const double f_t = max_overlap_choi_unitary(Channel::unitary(t), cliff);
  CHECK(f_t == doctest::Approx(brute).epsilon(1e-12));
  CHECK(f_t == doctest::Approx(std::pow(std::cos(std::numbers::pi / 8.0), 2)).epsilon(1e-12));

  const double f_ppt = max_overlap_choi_unitary(Channel::identity(2), FreeSetDescriptor::ppt(2, 2));
  CHECK(f_ppt <= 0.5 + 1e-6);
  CHECK(f_ppt >= 0.5 - 1e-6);
  CHECK_THROWS_AS(max_overlap_choi_unitary(depolarizing(0.1), cliff), DomainError);
}

TEST_CASE("MIO optimal fidelity") {
  CHECK(mio_optimal_fidelity(DensityMatrix(plus_state()), 2) == doctest::Approx(1.0).epsilon(1e-7));
  for (int k = 1; k < 20; ++k) {
    const double mu = k / 20.0;
    CHECK(mio_optimal_fidelity(depolarized_plus(mu), 2) == doctest::Approx(1.0 - mu / 2.0).epsilon(1e-7));
  }
  const auto coh2 = FreeSetDescriptor::coherence(2);
  double prev = 2.0;
  for (int k = 0; k <= 50; ++k) {
    const double nu = k / 50.0;
    const double f = mio_optimal_fidelity(amp_damped_plus(nu), 2);
    CHECK(f <= prev + 1e-7);
    prev = f;
    // Achievable error never beats the free-component bound.
    CHECK(1.0 - f >= gamma_of(amp_damped_plus(nu), coh2) * 0.5 - 1e-7);
  }
  CHECK_THROWS_AS(mio_optimal_fidelity(depolarized_plus(0.2), 3), DomainError);
}

TEST_CASE("single-qubit Clifford group") {
  const auto group = clifford_unitaries_1q();
  CHECK(group.size() == 24);
  auto contains = [&](const ComplexMatrix &g) {
    for (const auto &u : group) {
      if (std::abs((u.adjoint() * g).trace()) > 2.0 - 1e-9) {
        return true;
      }
    }
    return false;
  };
  for (const char *name : {"i", "h", "s", "x", "y", "z"}) {
    CHECK(contains(gate_matrix(name)));
  }
  CHECK_FALSE(contains(gate_matrix("t")));
  const auto channels = clifford_group_1q();
  CHECK(channels.size() == 24);
  // Closure under composition, matched by Choi matrix.
  int misses = 0;
  for (const auto &a : channels) {
    for (const auto &b : channels) {
      const Channel ab = compose(a, b);
      bool found = false;
      for (const auto &c : channels) {
        if (max_abs_diff(ab.choi().matrix(), c.choi().matrix()) <= 1e-9) {
          found = true;
          break;
        }
      }
      misses += found ? 0 : 1;
    }
  }
  CHECK(misses == 0);
  // Choi-distinct.
  for (std::size_t i = 0; i < channels.size(); ++i) {
    for (std::size_t j = i + 1; j < channels.size(); ++j) {
      CHECK(max_abs_diff(channels[i].choi().matrix(), channels[j].choi().matrix()) > 1e-3);
    }
  }
}

TEST_CASE("single-qubit stabilizer states") {
  const auto states = stabilizer_states_1q();
  CHECK(states.size() == 6);
  const auto stab = FreeSetDescriptor::stabilizer_1q();
  const DensityMatrix bar(HermitianMatrix{{0.5, Complex{0.25, -0.25}}, {Complex{0.25, 0.25}, 0.5}});
  CHECK(gamma_of(bar, stab) == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(gamma_of(DensityMatrix::maximally_mixed(2), stab) == doctest::Approx(1.0).epsilon(1e-7));
  // The T state direction sits outside the hull.
  CHECK(gamma_of(DensityMatrix(t_state()), stab) <= 1e-7);
}

TEST_CASE("d_min_resource and squeezed overlap") {
  const auto stab = FreeSetDescriptor::stabilizer_1q();
  CHECK(std::abs(d_min_resource(noisy_t(0.1), stab)) <= 1e-12);
  CHECK(d_min_resource(DensityMatrix(plus_state()), stab) == doctest::Approx(0.0).epsilon(1e-12));
  const double gz = d_min_resource(coherence_gamma_zero_example(), FreeSetDescriptor::coherence(4));
  CHECK(gz == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(squeezed_overlap(0.0) == 1.0);
  CHECK(squeezed_overlap(1.0) == doctest::Approx(0.6480542737).epsilon(1e-9));
  double prev = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double f = squeezed_overlap(k * 0.1);
    CHECK(f < prev);
    prev = f;
  }
  CHECK_THROWS_AS(squeezed_overlap(-1.0), DomainError);
}

TEST_CASE("Gibbs singleton: closed form against two independent routes") {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const DensityMatrix sigma = gibbs_state(freecomp::testing::random_hermitian(rng, n), 0.7);
    const DensityMatrix rho(freecomp::testing::random_density(rng, n));
    const GammaResult r = free_component_state(rho, FreeSetDescriptor::gibbs(sigma));
    CHECK(r.method == GammaMethod::ClosedForm);
    CHECK(r.gamma == doctest::Approx(freecomp::testing::bisection_singleton_gamma(rho.mat(), sigma.mat()))
                         .epsilon(1e-8));
    const double via_hull = gamma_of(rho, FreeSetDescriptor::hull({sigma.mat()}, "single"));
    CHECK(std::abs(r.gamma - via_hull) <= 1e-7);
    // Operational form: Gamma = 2^{-D_max(sigma || rho)}.
    CHECK(r.gamma == doctest::Approx(std::exp2(-d_max(sigma.mat(), rho.mat()))).epsilon(1e-9));
  }
  // Support not contained: Gamma = 0 with the flag cleared.
  const DensityMatrix sigma = DensityMatrix::maximally_mixed(2);
  const GammaResult r = free_component_state(DensityMatrix(plus_state()), FreeSetDescriptor::gibbs(sigma));
  CHECK(r.gamma == 0.0);
  CHECK_FALSE(r.support_contained);
  CHECK(std::isinf(d_max(sigma.mat(), plus_state().projector())));
  CHECK(gamma_of(sigma, FreeSetDescriptor::gibbs(sigma)) == doctest::Approx(1.0));
}

TEST_CASE("Gamma dominates the smallest eigenvalue on full-rank states") {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const DensityMatrix rho(freecomp::testing::random_density(rng, n));
    CHECK(gamma_of(rho, FreeSetDescriptor::coherence(n)) >= min_nonzero_eigenvalue(rho) - 1e-7);
  }
}

TEST_CASE("monotonicity under diagonal-preserving channels") {
  Rng rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto coh3 = FreeSetDescriptor::coherence(3);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho(freecomp::testing::random_density(rng, 3, 1 + static_cast<std::size_t>(trial % 3)));
    const Channel n = compose(dephasing(unif(rng), 3), Channel::unitary(random_permutation(rng, 3)));
    CHECK(gamma_of(n.apply(rho), coh3) >= gamma_of(rho, coh3) - 1e-7);
  }
}

TEST_CASE("super-multiplicity for states") {
  Rng rng(24);
  const auto coh2 = FreeSetDescriptor::coherence(2);
  const auto coh4 = FreeSetDescriptor::coherence(4);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho(freecomp::testing::random_density(rng, 2));
    const double g = gamma_of(rho, coh2);
    CHECK(gamma_of(DensityMatrix(kron(rho.mat(), rho.mat())), coh4) >= g * g - 1e-7);
  }
  const DensityMatrix dp = depolarized_plus(0.4);
  CHECK(gamma_of(DensityMatrix(kron(dp.mat(), dp.mat())), coh4) >= 0.16 - 1e-7);
}

TEST_CASE("super-multiplicity for channels and two-slot combs") {
  Rng rng(25);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto cliffords = clifford_group_1q();
  const auto cliff = FreeSetDescriptor::clifford_1q();
  auto random_noisy = [&]() {
    const Channel free_part = random_clifford_mixture(rng, cliffords, 3);
    const Channel rest = compose(depolarizing(unif(rng)), Channel::unitary(freecomp::testing::random_unitary(rng, 2)));
    return mix(unif(rng), free_part, rest);
  };
  std::uniform_int_distribution<std::size_t> pick(0, cliffords.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Channel n1 = random_noisy();
    const Channel n2 = random_noisy();
    const double g1 = gamma_of(n1, cliff);
    const double g2 = gamma_of(n2, cliff);
    CHECK(gamma_of(compose(n2, n1), cliff) >= g1 * g2 - 1e-7);
    // Comb P3 o N2 o P2 o N1 o P1 with free P's.
    const Channel comb = compose(cliffords[pick(rng)],
                                 compose(n2, compose(cliffords[pick(rng)], compose(n1, cliffords[pick(rng)]))));
    CHECK(gamma_of(comb, cliff) >= g1 * g2 - 1e-7);
  }
}

TEST_CASE("Gamma > 0 exactly when the min-relative entropy of resource vanishes") {
  Rng rng(26);
  int checked = 0;
  auto agree = [&](const DensityMatrix &rho, const FreeSetDescriptor &f) {
    const bool positive = gamma_of(rho, f) > 1e-6;
    const bool zero_dmin = d_min_resource(rho, f) < 1e-6;
    CHECK(positive == zero_dmin);
    ++checked;
  };
  agree(coherence_gamma_zero_example(), FreeSetDescriptor::coherence(4));
  agree(DensityMatrix(plus_state()), FreeSetDescriptor::coherence(2));
  agree(DensityMatrix(t_state()), FreeSetDescriptor::stabilizer_1q());
  agree(noisy_t(0.1), FreeSetDescriptor::stabilizer_1q());
  agree(amp_damped_plus(0.5), FreeSetDescriptor::coherence(2));
  // Rank 3 of 4 containing |3><3|: Gamma > 0 although not full rank.
  agree(DensityMatrix(0.5 * PureState::basis(4, 3).projector() + 0.5 * coherence_gamma_zero_example().mat()),
        FreeSetDescriptor::coherence(4));
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t rank = 1 + static_cast<std::size_t>(trial % n);
    agree(DensityMatrix(freecomp::testing::random_density(rng, n, rank)), FreeSetDescriptor::coherence(n));
  }
  CHECK(checked >= 100);
}

TEST_CASE("overlap 1 exactly when the pure state lies in the hull") {
  Rng rng(27);
  const auto stab = FreeSetDescriptor::stabilizer_1q();
  std::vector<PureState> suite = stabilizer_states_1q();
  suite.push_back(t_state());
  for (int k = 0; k < 100; ++k) {
    suite.push_back(PureState(freecomp::testing::random_pure(rng, 2)));
  }
  for (const auto &psi : suite) {
    const bool overlap_one = max_overlap_pure(psi, stab) >= 1.0 - 1e-7;
    // Membership: the whole state is free iff Gamma = 1.
    const bool member = gamma_of(DensityMatrix(psi), stab) >= 1.0 - 1e-6;
    CHECK(overlap_one == member);
  }
}

TEST_CASE("PPT free component") {
  const auto ppt = FreeSetDescriptor::ppt(2, 2);
  // Choi of depolarizing(mu) is PPT iff mu >= 2/3.
  CHECK(gamma_of(depolarizing(0.8), ppt) == doctest::Approx(1.0).epsilon(1e-7));
  const double g = gamma_of(depolarizing(0.5), ppt);
  CHECK(g >= 0.5 - 1e-7);
  CHECK(g < 1.0);
  CHECK(gamma_of(Channel::identity(2), ppt) <= 1e-6);
  CHECK_THROWS_AS(free_component_channel(erasure(0.1), ppt), DomainError);
}

TEST_CASE("free set spec strings") {
  CHECK(parse_free_set("coherence:3").dim() == 3);
  CHECK(parse_free_set("stab1q").dim() == 2);
  CHECK(parse_free_set("clifford1q").dim() == 4);
  CHECK(parse_free_set("ppt:2,3").dim() == 6);
  const auto path = std::filesystem::temp_directory_path() / "freecomp_test_hull.json";
  {
    std::ofstream out(path);
    out << nlohmann::json::array({matrix_to_json(PureState::basis(2, 0).projector()),
                                  matrix_to_json(PureState::basis(2, 1).projector())});
  }
  const auto hull = parse_free_set("hull:" + path.string());
  CHECK(gamma_of(depolarized_plus(0.3), hull) == doctest::Approx(0.3).epsilon(1e-7));
  std::filesystem::remove(path);
  CHECK_THROWS_AS(parse_free_set("bogus"), ParseError);
  CHECK_THROWS_AS(parse_free_set("ppt:2"), ParseError);
  CHECK_THROWS_AS(FreeSetDescriptor::hull({}, "empty"), DomainError);
}
