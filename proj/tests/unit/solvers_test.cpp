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
#include "mqpt/errors.hpp"
#include "mqpt/noise.hpp"
#include "mqpt/solvers.hpp"

using namespace mqpt;

namespace {

PauliTransferMatrix multipass(const PauliTransferMatrix& t, const Matrix& e, int n) {
  return PauliTransferMatrix(t.qubits(), matrix_power(Matrix(t.matrix() + e), n));
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    den += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return num / den;
}

}  // namespace

TEST_SUITE("solvers") {

TEST_CASE("iterative defaults") {
  const IterativeConfig cfg;
  CHECK(cfg.alpha == 0.01);
  CHECK(cfg.tolerance == 1e-12);
  CHECK(cfg.max_iterations == 3000);
  const ExtendedSylvesterConfig ext;
  CHECK(ext.mu == 0.003);
}

TEST_CASE("iterative: exact target power gives zero at iteration 0") {
  const auto& t = load_fixtures().sqrtx_target;
  const auto out = iterative_recover(t, channel_power(t, 5), 5);
  CHECK(out.converged);
  CHECK(out.iterations == 0);
  CHECK(out.error.matrix().norm() == 0.0);
}

TEST_CASE("iterative: sqrt(X) fixture at N = 17") {
  const auto g = fixture_gate("sqrtx");
  const auto out = iterative_recover(g.target, multipass(g.target, g.error.matrix(), 17), 17);
  CHECK(out.converged);
  CHECK(out.residual <= 1e-12);
  CHECK((out.error.matrix() - g.error.matrix()).norm() < 1e-10);
}

TEST_CASE("iterative: rejects pass counts that are not 1 mod the order") {
  const auto& t = load_fixtures().sqrtx_target;
  CHECK_THROWS_AS(iterative_recover(t, t, 3), InvalidArgument);
  CHECK_THROWS_AS(iterative_recover(t, t, 1, IterativeConfig{0.0, 1e-12, 10}), InvalidArgument);
}

TEST_CASE("iterative: random errors up to 0.1 Frobenius") {
  const auto& f = load_fixtures();
  struct Case {
    const PauliTransferMatrix* t;
    std::vector<int> passes;
  };
  const Case cases[] = {{&f.sqrtx_target, {1, 5, 9, 13, 17, 21}},
                        {&f.cnot10_target, {1, 3, 7, 11, 15, 19, 21}}};
  for (const auto& c : cases)
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      LindbladParameters p{0.01, 0.01, 3, seed};
      p = calibrate_lindblad(*c.t, c.t->qubits() == 1 ? 0.004 : 0.006, p, 1e-6);
      const auto g = random_lindblad_error(*c.t, p);
      REQUIRE(g.error.matrix().norm() <= 0.1);
      for (int n : c.passes) {
        CAPTURE(n);
        CAPTURE(seed);
        const auto out = iterative_recover(*c.t, multipass(*c.t, g.error.matrix(), n), n);
        CHECK(out.converged);
        CHECK(out.residual < 1e-12);
        CHECK(out.iterations <= 3000);
      }
    }
}

TEST_CASE("sylvester: N = 1 gives zero") {
  const auto& t = load_fixtures().cnot10_target;
  CHECK(sylvester_recover_involutary(t, t, 0).matrix().norm() < 1e-15);
  CHECK_THROWS_AS(sylvester_recover_involutary(load_fixtures().sqrtx_target,
                                               load_fixtures().sqrtx_target, 1),
                  InvalidArgument);
}

TEST_CASE("sylvester: solves its equation and scales quadratically") {
  const auto g = fixture_gate("cnot10");
  std::vector<double> scales{1.0, 0.5, 0.25, 0.125}, errs;
  for (double s : scales) {
    const Matrix e = s * g.error.matrix();
    const auto rn = multipass(g.target, e, 11);
    const auto rec = sylvester_recover_involutary(g.target, rn, 5);
    CHECK(sylvester_residual(g.target, rn, 5, rec.matrix()) < 1e-12);
    errs.push_back((rec.matrix() - e).norm());
  }
  const double slope = log_log_slope(scales, errs);
  CHECK(slope >= 1.8);
  CHECK(slope <= 2.2);
}

TEST_CASE("sylvester: recovery error grows with m") {
  const auto g = fixture_gate("cnot10");
  double previous = 0.0;
  for (int m : {1, 3, 5, 8}) {
    const auto rn = multipass(g.target, g.error.matrix(), 2 * m + 1);
    const double err =
        (sylvester_recover_involutary(g.target, rn, m).matrix() - g.error.matrix()).norm();
    CHECK(err > previous);
    previous = err;
  }
}

TEST_CASE("extended sylvester: exact target power gives zero immediately") {
  const auto& t = load_fixtures().sqrtx_target;
  const auto out = extended_sylvester_recover(t, channel_power(t, 5), 5);
  CHECK(out.converged);
  CHECK(out.iterations == 0);
  CHECK(out.error.matrix().norm() == 0.0);
}

TEST_CASE("extended sylvester: matches the linear method on CNOT") {
  const auto g = fixture_gate("cnot10");
  const auto rn = multipass(g.target, g.error.matrix(), 11);
  const auto ext = extended_sylvester_recover(g.target, rn, 11);
  CHECK(ext.converged);
  const auto lin = sylvester_recover_involutary(g.target, rn, 5);
  CHECK((ext.error.matrix() - lin.matrix()).norm() < 1e-8);
}

TEST_CASE("extended sylvester: residual decreases every iteration on sqrt(X)") {
  const auto g = fixture_gate("sqrtx");
  const auto rn = multipass(g.target, g.error.matrix(), 17);
  ExtendedSylvesterConfig cfg;
  cfg.max_iterations = 1;
  Matrix e = Matrix::Zero(4, 4);
  double previous = extended_sylvester_residual(g.target, rn, 17, e);
  int steps = 0;
  for (; steps < 300; ++steps) {
    cfg.initial_error = e;
    const auto out = extended_sylvester_recover(g.target, rn, 17, cfg);
    if (out.converged && out.iterations == 0) break;
    REQUIRE(out.iterations == 1);
    CHECK(out.residual < previous);
    previous = out.residual;
    e = out.error.matrix();
  }
  CHECK(steps == 300);
  const auto full = extended_sylvester_recover(g.target, rn, 17);
  CHECK(full.converged);
  CHECK(full.residual <= 1e-12);
}

TEST_CASE("extended sylvester: flags divergence for an oversized step") {
  const auto g = fixture_gate("sqrtx");
  ExtendedSylvesterConfig cfg;
  cfg.mu = 0.05;
  const auto out = extended_sylvester_recover(g.target, multipass(g.target, g.error.matrix(), 21),
                                              21, cfg);
  CHECK(out.diverged);
  CHECK_FALSE(out.converged);
}

TEST_CASE("all methods keep the first row zero") {
  const auto g = fixture_gate("cnot10");
  const auto rn = multipass(g.target, g.error.matrix(), 7);
  for (auto m : {Method::iterative, Method::sylvester, Method::extended_sylvester}) {
    CAPTURE(method_name(m));
    const auto out = recover(m, g.target, rn, 7);
    CHECK(out.error.matrix().row(0).norm() < 1e-12);
  }
  CHECK_THROWS_AS(recover(Method::sylvester, g.target, rn, 8), InvalidArgument);
}

TEST_CASE("method names") {
  CHECK(parse_method("iterative") == Method::iterative);
  CHECK(parse_method("linear") == Method::sylvester);
  CHECK(parse_method("extsylv") == Method::extended_sylvester);
  CHECK(parse_method(method_name(Method::extended_sylvester)) == Method::extended_sylvester);
  CHECK_THROWS_AS(parse_method("newton"), InvalidArgument);
}

TEST_CASE("second-order terms") {
  const auto g = fixture_gate("cnot10");
  const Matrix zero = Matrix::Zero(16, 16);
  const auto z = second_order_terms(g.target, zero, 3);
  CHECK(z.ea2.norm() == 0.0);
  CHECK(z.eb2.norm() == 0.0);

  const Matrix& t = g.target.matrix();
  const Matrix& e = g.error.matrix();
  const auto terms = second_order_terms(g.target, e, 1);
  CHECK((second_order_expansion(g.target, e, 1) - (t + 2.0 * e + t * e * t + terms.ea2)).norm() <
        1e-15);

  std::vector<double> remainders;
  for (double s : {1.0, 0.5}) {
    const Matrix es = s * e;
    remainders.push_back(
        (matrix_power(Matrix(t + es), 7) - second_order_expansion(g.target, es, 3)).norm());
  }
  CHECK(remainders[0] / remainders[1] == doctest::Approx(8.0).epsilon(0.1));
}

}  // TEST_SUITE
