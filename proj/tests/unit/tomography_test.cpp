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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <doctest.h>

#include "../support.hpp"
#include "mqpt/errors.hpp"
#include "mqpt/experiments.hpp"
#include "mqpt/metrics.hpp"
#include "mqpt/tomography.hpp"

using namespace mqpt;

namespace {

TomographyCircuit circuit(std::vector<Prep> preps, std::vector<Basis> bases, int passes = 1) {
  return TomographyCircuit{std::move(preps), std::move(bases), passes};
}

NoiseModel paper_noise() {
  NoiseModel m;
  m.spam_infidelity = 2e-4;
  m.readout_error = 3e-3;
  return m;
}

}  // namespace

TEST_SUITE("tomography") {

TEST_CASE("circuit counts") {
  CHECK(generate_circuits(1, 1).size() == 12);
  CHECK(generate_circuits(2, 1).size() == 144);
  const auto five = generate_circuits(1, 5);
  CHECK(std::all_of(five.begin(), five.end(), [](const auto& c) { return c.passes == 5; }));
  std::set<std::string> labels;
  for (const auto& c : generate_circuits(2, 3)) labels.insert(c.label());
  CHECK(labels.size() == 144);
  CHECK_THROWS_AS(generate_circuits(0, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_circuits(1, 0), InvalidArgument);
}

TEST_CASE("exact probability examples") {
  const NoiseModel ideal;
  const Vector p = exact_probabilities(circuit({Prep::z0}, {Basis::z}), identity_ptm(1), ideal);
  CHECK((p - Eigen::Vector2d(1.0, 0.0)).norm() < 1e-15);

  // |10>: the leftmost qubit is the control, so CNOT gives |11>.
  const auto& cnot = load_fixtures().cnot10_target;
  const Vector q =
      exact_probabilities(circuit({Prep::z1, Prep::z0}, {Basis::z, Basis::z}), cnot, ideal);
  CHECK((q - Eigen::Vector4d(0, 0, 0, 1)).norm() < 1e-14);
  const Vector q01 =
      exact_probabilities(circuit({Prep::z0, Prep::z1}, {Basis::z, Basis::z}), cnot, ideal);
  CHECK((q01 - Eigen::Vector4d(0, 1, 0, 0)).norm() < 1e-14);

  NoiseModel readout;
  readout.readout_error = 0.003;
  const Vector r = exact_probabilities(circuit({Prep::z0}, {Basis::z}), identity_ptm(1), readout);
  CHECK((r - Eigen::Vector2d(0.997, 0.003)).norm() < 1e-15);
}

TEST_CASE("probabilities of random channels are distributions") {
  const auto r = testing::random_cptp(2, 8);
  for (const auto& c : generate_circuits(2, 3)) {
    const Vector p = exact_probabilities(c, r, paper_noise());
    CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.minCoeff() > -1e-12);
  }
}

TEST_CASE("sample_counts") {
  const auto c = sample_counts(Eigen::Vector2d(1.0, 0.0), 1000, 1);
  CHECK(c == std::vector<std::int64_t>{1000, 0});
  const Eigen::Vector4d p(0.1, 0.2, 0.3, 0.4);
  CHECK(sample_counts(p, 5000, 9) == sample_counts(p, 5000, 9));
  const auto d = sample_counts(p, 5000, 9);
  CHECK(std::accumulate(d.begin(), d.end(), std::int64_t{0}) == 5000);
  CHECK(std::all_of(d.begin(), d.end(), [](auto v) { return v >= 0; }));
}

TEST_CASE("frequency error follows the binomial standard deviation") {
  const std::int64_t shots = 10000;
  const int draws = 400;
  double sq = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto c = sample_counts(Eigen::Vector2d(0.3, 0.7), shots, derive_seed(5, i));
    const double f = static_cast<double>(c[0]) / static_cast<double>(shots);
    sq += (f - 0.3) * (f - 0.3);
  }
  const double observed = std::sqrt(sq / draws);
  const double expected = std::sqrt(0.3 * 0.7 / static_cast<double>(shots));
  CHECK(observed == doctest::Approx(expected).epsilon(0.15));
}

TEST_CASE("readout mitigation") {
  CountsTable t;
  t.circuits = {circuit({Prep::z0}, {Basis::z})};
  t.counts = {Eigen::Vector2d(997.0, 3.0)};
  t.shots = 1000;
  CHECK(mitigate_readout(t, Matrix::Identity(2, 2)).counts[0] == t.counts[0]);
  const auto m = mitigate_readout(t, readout_confusion(1, 0.003));
  CHECK((m.counts[0] - Eigen::Vector2d(1000.0, 0.0)).norm() < 1e-9);

  const Matrix c = readout_confusion(2, 0.003);
  CountsTable exact;
  exact.circuits = {circuit({Prep::z0, Prep::z0}, {Basis::z, Basis::z})};
  const Eigen::Vector4d p(0.4, 0.3, 0.2, 0.1);
  exact.counts = {c * p};
  CHECK((mitigate_readout(exact, c).counts[0] - p).norm() < 1e-12);
  CHECK_THROWS_AS(mitigate_readout(exact, Matrix::Zero(4, 4)), NumericalError);
}

TEST_CASE("noiseless reconstruction is exact") {
  const auto& sx = load_fixtures().sqrtx_target;
  const auto rec = run_tomography(sx, 1, NoiseModel{});
  CHECK((rec.ptm.matrix() - sx.matrix()).norm() < 1e-10);
  CHECK(rec.residual < 1e-10);
  for (int n = 1; n <= 2; ++n) {
    const auto r = testing::random_cptp(n, 31 + static_cast<unsigned>(n));
    const auto out = run_tomography(r, 1, NoiseModel{});
    CHECK((out.ptm.matrix() - r.matrix()).norm() < 1e-10);
    CHECK((out.ptm.matrix() - ptm_from_choi(out.choi).matrix()).norm() < 1e-12);
    CHECK((out.choi.matrix() - out.choi.matrix().adjoint()).norm() == 0.0);
  }
}

TEST_CASE("noiseless multipass of a unitary equals the power") {
  const auto u = target_ptm(testing::random_unitary(4, 12));
  const auto rec = run_tomography(u, 3, NoiseModel{});
  CHECK((rec.ptm.matrix() - channel_power(u, 3).matrix()).norm() < 1e-10);
}

TEST_CASE("SPAM and readout bias a single-pass reconstruction") {
  const auto gate = fixture_gate("sqrtx");
  const auto r = channel_with_error(gate.target, gate.error);
  const auto rec = run_tomography(r, 1, paper_noise());
  const ErrorMatrix measured = error_between(rec.ptm, gate.target);
  CHECK(differential_diamond(measured.matrix(), gate.error.matrix()) > 1e-4);
}

TEST_CASE("measurement distortion does not depend on N") {
  // N passes of R and one pass of R^N see the same preparation and
  // measurement sandwich.
  const auto r = testing::random_cptp(1, 4, 0.1);
  NoiseModel noise = paper_noise();
  noise.spam_coherent_fraction = 0.5;
  for (int n : {3, 5}) {
    const auto many = run_tomography(r, n, noise);
    const auto once = run_tomography(channel_power(r, n), 1, noise);
    CHECK((many.ptm.matrix() - once.ptm.matrix()).norm() < 1e-12);
  }
  // The distortion is affine in the channel, with no N-dependent term.
  const auto a = run_tomography(r, 1, noise).ptm.matrix();
  const auto b = run_tomography(identity_ptm(1), 1, noise).ptm.matrix();
  const auto mix = run_tomography(PauliTransferMatrix(1, 0.5 * (r.matrix() + Matrix::Identity(4, 4))),
                                  1, noise).ptm.matrix();
  CHECK((mix - 0.5 * (a + b)).norm() < 1e-12);
}

TEST_CASE("project_psd returns a completely positive estimate") {
  const auto gate = fixture_gate("cnot10");
  NoiseModel noise = paper_noise();
  noise.shots = 1000;
  noise.seed = 3;
  const auto r = channel_with_error(gate.target, gate.error);
  const auto raw = run_tomography(r, 1, noise);
  const auto psd = run_tomography(r, 1, noise, ReconstructionOptions{true});
  CHECK(is_cptp(psd.choi, 1e-9).min_eigenvalue >= -1e-9);
  CHECK(is_cptp(raw.choi, 1e-9).min_eigenvalue < 0.0);
}

TEST_CASE("shot-noise error halves when the shot count quadruples") {
  const auto r = channel_with_error(fixture_gate("sqrtx").target, fixture_gate("sqrtx").error);
  auto median_error = [&](std::int64_t shots) {
    std::vector<double> errs;
    for (int rep = 0; rep < 50; ++rep) {
      NoiseModel m;
      m.shots = shots;
      m.seed = repetition_seed(77, static_cast<std::size_t>(shots), rep);
      errs.push_back((run_tomography(r, 1, m).ptm.matrix() - r.matrix()).norm());
    }
    return median(errs);
  };
  const double ratio = median_error(2000) / median_error(8000);
  CHECK(ratio >= 1.5);
  CHECK(ratio <= 2.5);
}

TEST_CASE("counts JSON round trip") {
  NoiseModel m;
  m.shots = 100;
  m.seed = 1;
  const auto t = simulate_counts(testing::random_cptp(1, 2), 5, m);
  const auto back = counts_from_json(counts_to_json(t));
  CHECK(back.shots == 100);
  REQUIRE(back.circuits.size() == t.circuits.size());
  for (std::size_t i = 0; i < t.circuits.size(); ++i) {
    CHECK(back.circuits[i].label() == t.circuits[i].label());
    CHECK(back.circuits[i].passes == 5);
    CHECK(back.counts[i] == t.counts[i]);
  }
}

TEST_CASE("same seed gives identical counts") {
  NoiseModel m;
  m.shots = 10000;
  m.seed = 99;
  const auto r = testing::random_cptp(2, 3);
  const auto a = simulate_counts(r, 1, m);
  const auto b = simulate_counts(r, 1, m);
  for (std::size_t i = 0; i < a.counts.size(); ++i) CHECK(a.counts[i] == b.counts[i]);
}

}  // TEST_SUITE
