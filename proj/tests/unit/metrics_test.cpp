// Copyright 2026 The MQPT Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>

#include <doctest.h>

#include "../support.hpp"
#include "mqpt/conic.hpp"
#include "mqpt/errors.hpp"
#include "mqpt/metrics.hpp"
#include "mqpt/solvers.hpp"
#include "mqpt/tomography.hpp"

using namespace mqpt;

TEST_SUITE("metrics") {

TEST_CASE("fidelity") {
  const auto& f = load_fixtures();
  CHECK(process_fidelity(f.sqrtx_target, f.sqrtx_target).fidelity == doctest::Approx(1.0));
  const auto sx = process_fidelity(f.sqrtx_target, channel_with_error(f.sqrtx_target, f.sqrtx_error));
  CHECK(sx.infidelity == doctest::Approx(0.00019).epsilon(0.02));
  CHECK(sx.fidelity + sx.infidelity == doctest::Approx(1.0));
  const auto cx = process_fidelity(f.cnot10_target, channel_with_error(f.cnot10_target, f.cnot10_error));
  CHECK(cx.infidelity == doctest::Approx(0.0062).epsilon(0.01));
}

TEST_CASE("diamond norm of zero is zero") {
  CHECK(diamond_norm(Matrix::Zero(4, 4)) == 0.0);
  CHECK(diamond_norm(Matrix::Zero(16, 16)) == 0.0);
}

TEST_CASE("unitary oracle examples") {
  const CMatrix id = CMatrix::Identity(2, 2);
  CHECK(unitary_diamond_oracle(id, id) == doctest::Approx(0.0));
  CHECK(unitary_diamond_oracle(id, pauli_x()) == doctest::Approx(2.0));
  const double theta = 0.3;
  CMatrix v = id;
  v(1, 1) = std::polar(1.0, theta);
  const double closed = unitary_diamond_oracle(id, v);
  CHECK(closed == doctest::Approx(2.0 * std::sin(theta / 2.0)).epsilon(1e-12));
  const Matrix e = target_ptm(v).matrix() - Matrix::Identity(4, 4);
  CHECK(std::abs(diamond_norm(e, 1e-7) - closed) < 1e-5);
}

TEST_CASE("SDP matches the unitary oracle on random pairs") {
  for (int n = 1; n <= 2; ++n)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const Index d = Index{1} << n;
      const CMatrix u = testing::random_unitary(d, 1000 + seed);
      const CMatrix v = testing::random_unitary(d, 2000 + seed);
      const Matrix e = target_ptm(v).matrix() - target_ptm(u).matrix();
      const auto res = solve_diamond_norm(e);
      CHECK(res.converged);
      CHECK(res.lower <= res.upper + 1e-12);
      CHECK(std::abs(res.value - unitary_diamond_oracle(u, v)) < 1e-4);
    }
}

TEST_CASE("bound check") {
  CHECK(diamond_bound_check(0.00019, 0.018, 2));
  CHECK(diamond_bound_check(0.0062, 0.073, 4));
  CHECK(diamond_bound_check(0.0, 0.0, 2));
  CHECK_FALSE(diamond_bound_check(0.01, 0.001, 2));
  CHECK_FALSE(diamond_bound_check(0.0001, 0.5, 2));
}

TEST_CASE("bound holds on CPTP channels with unitary targets") {
  for (int n = 1; n <= 2; ++n)
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto t = target_ptm(testing::random_unitary(Index{1} << n, seed));
      const auto g = random_lindblad_error(t, LindbladParameters{0.05, 0.05, 3, seed});
      const auto m = evaluate_metrics(t, g.channel);
      CHECK(diamond_bound_check(m.infidelity, m.diamond_norm, Index{1} << n));
    }
}

TEST_CASE("norm axioms") {
  const Matrix a = testing::random_cptp(1, 1).matrix() - testing::random_cptp(1, 2).matrix();
  const Matrix b = testing::random_cptp(1, 3).matrix() - testing::random_cptp(1, 4).matrix();
  const double na = diamond_norm(a, 1e-7);
  const double nb = diamond_norm(b, 1e-7);
  CHECK(na > 0.0);
  CHECK(diamond_norm(-2.5 * a, 1e-7) == doctest::Approx(2.5 * na).epsilon(1e-5));
  CHECK(diamond_norm(a + b, 1e-7) <= na + nb + 1e-6);
  const Matrix c = testing::random_cptp(2, 5).matrix() - testing::random_cptp(2, 6).matrix();
  const Matrix e = testing::random_cptp(2, 7).matrix() - testing::random_cptp(2, 8).matrix();
  CHECK(diamond_norm(c + e) <= diamond_norm(c) + diamond_norm(e) + 1e-5);
}

TEST_CASE("certified bracket contains the value") {
  const auto g = fixture_gate("sqrtx");
  const auto res = solve_diamond_norm(g.error.matrix(), DiamondSettings{1e-8, 50000});
  CHECK(res.converged);
  CHECK(res.lower <= res.value + 1e-15);
  CHECK(res.value <= res.upper + 1e-15);
  CHECK(res.gap <= 1e-8);
  CHECK(res.value == doctest::Approx(0.0121841).epsilon(1e-4));
}

TEST_CASE("differential diamond") {
  const auto g = fixture_gate("sqrtx");
  CHECK(differential_diamond(g.error.matrix(), g.error.matrix()) == 0.0);
  const auto r = channel_with_error(g.target, g.error);
  const auto noiseless = run_tomography(r, 17, NoiseModel{});
  const auto rec = iterative_recover(g.target, noiseless.ptm, 17);
  const double d17 = differential_diamond(rec.error.matrix(), g.error.matrix());
  CHECK(d17 < 1e-8);

  NoiseModel noisy;
  noisy.spam_infidelity = 2e-4;
  noisy.readout_error = 3e-3;
  const auto single = run_tomography(r, 1, noisy);
  const double d1 =
      differential_diamond(error_between(single.ptm, g.target).matrix(), g.error.matrix());
  const auto multi = run_tomography(r, 17, noisy);
  const double dm = differential_diamond(
      iterative_recover(g.target, multi.ptm, 17).error.matrix(), g.error.matrix());
  CHECK(d1 > 0.0);
  CHECK(d1 > dm);
}

TEST_CASE("evaluate_metrics") {
  const auto g = fixture_gate("cnot10");
  const auto r = channel_with_error(g.target, g.error);
  const auto m = evaluate_metrics(g.target, r, g.error.matrix());
  CHECK(m.infidelity == doctest::Approx(0.0062).epsilon(0.01));
  REQUIRE(m.differential_diamond.has_value());
  CHECK(*m.differential_diamond < 1e-14);
  CHECK(m.diamond_solver_gap <= 1e-6);
}

TEST_CASE("hermitian vectorization helpers") {
  const CMatrix h = [] {
    CMatrix a = testing::random_unitary(3, 4);
    return CMatrix(a + a.adjoint());
  }();
  const Vector v = hvec(h);
  CHECK(v.size() == 9);
  CHECK((hmat(v, 3) - h).norm() < 1e-14);
  CHECK(std::abs(v.squaredNorm() - h.squaredNorm()) < 1e-12);
  const Vector p = project_hpsd(v, 3);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hmat(p, 3));
  CHECK(eig.eigenvalues().minCoeff() > -1e-12);
}

TEST_CASE("conic solver on a tiny linear program") {
  // min x  s.t. x >= 1, written as the 1x1 PSD cone s = x - 1.
  ConicProblem p;
  p.a = Matrix::Constant(1, 1, -1.0);
  p.b = Vector::Constant(1, -1.0);
  p.c = Vector::Constant(1, 1.0);
  p.cone_sizes = {1};
  ConicSolver solver(p);
  const auto res = solver.solve();
  CHECK(res.converged);
  CHECK(res.iterate.x(0) == doctest::Approx(1.0).epsilon(1e-6));
}

}  // TEST_SUITE
