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

#pragma once

#include <cstdint>
#include <random>

#include "mqpt/channel.hpp"
#include "mqpt/noise.hpp"

namespace mqpt::testing {

/// Haar-ish random unitary from the QR of a complex Gaussian matrix.
inline CMatrix random_unitary(Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  CMatrix z(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) z(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < d; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

/// Random CPTP channel: a random unitary followed by Lindblad noise.
inline PauliTransferMatrix random_cptp(int n, std::uint64_t seed, double strength = 0.3) {
  const auto u = target_ptm(random_unitary(Index{1} << n, seed));
  LindbladParameters p;
  p.hamiltonian_strength = strength;
  p.dissipation_strength = strength;
  p.collapse_operators = 4;
  p.seed = seed ^ 0x5bd1e995u;
  return PauliTransferMatrix(n, random_lindblad_channel(n, p).matrix() * u.matrix());
}

inline double fro(const Matrix& m) { return m.norm(); }

}  // namespace mqpt::testing
