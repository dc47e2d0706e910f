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
#include <string>
#include <vector>

#include "mqpt/channel.hpp"

namespace mqpt {

/// Stage-I imperfections.
struct NoiseModel {
  /// Process infidelity of each noisy single-qubit gate used for state
  /// preparation or basis change.
  double spam_infidelity = 0.0;
  /// Fraction of spam_infidelity spent on a coherent X over-rotation; the
  /// rest is depolarizing.
  double spam_coherent_fraction = 0.0;
  /// Per-qubit symmetric bit-flip probability of the readout.
  double readout_error = 0.0;
  /// Overrides readout_error when non-empty: column j is the distribution of
  /// recorded outcomes given true outcome j.
  Matrix readout_confusion;
  /// Invert the confusion matrix on the counts before reconstruction.
  bool mitigate_readout = false;
  /// Shots per circuit; 0 means exact probabilities.
  std::int64_t shots = 0;
  std::uint64_t seed = 0;

  /// Confusion matrix for n qubits.
  Matrix confusion(int n) const;
  /// Throws InvalidArgument on out-of-range parameters.
  void validate(int n) const;
};

/// Depolarizing channel composed with an X rotation, with total process
/// infidelity (w.r.t. identity) equal to `infidelity`.
PauliTransferMatrix spam_error_channel(double infidelity, double coherent_fraction = 0.0);

/// Tensor power of [[1-p, p], [p, 1-p]].
Matrix readout_confusion(int n, double flip_probability);

struct LindbladParameters {
  double hamiltonian_strength = 0.0;
  double dissipation_strength = 0.0;
  /// Number of random Pauli collapse operators.
  int collapse_operators = 3;
  std::uint64_t seed = 0;
};

/// PTM of exp(L) for a random generator L: Hamiltonian part with spectral
/// norm hamiltonian_strength, Pauli collapse operators with rates drawn
/// uniformly in [0, dissipation_strength].
PauliTransferMatrix random_lindblad_channel(int n, const LindbladParameters& params);

struct GateError {
  ErrorMatrix error;
  /// R = T + E: the random error applied after the target.
  PauliTransferMatrix channel;
};

GateError random_lindblad_error(const PauliTransferMatrix& target,
                                const LindbladParameters& params);

/// Scales both strengths by a common factor, found by bisection, so that
/// the process infidelity of the resulting channel equals target_infidelity
/// to within rel_tol. `params` fixes the seed, collapse count and the ratio
/// of the two strengths.
LindbladParameters calibrate_lindblad(const PauliTransferMatrix& target,
                                      double target_infidelity,
                                      LindbladParameters params,
                                      double rel_tol = 1e-9);

struct FixtureSet {
  PauliTransferMatrix sqrtx_target;
  ErrorMatrix sqrtx_error;
  PauliTransferMatrix cnot10_target;
  ErrorMatrix cnot10_error;
  PauliTransferMatrix cnot01_target;
  ErrorMatrix manila_error;

  static std::vector<std::string> names();
  /// Matrix by fixture name; throws InvalidArgument for unknown names.
  const Matrix& get(const std::string& name) const;
};

/// Bundled tables compiled into the library. Cached.
const FixtureSet& load_fixtures();
/// Reads <dir>/<name>.json for every fixture.
FixtureSet load_fixtures(const std::string& directory);

/// Target and ground-truth error for a named gate: sqrtx, cnot10, or cnot01
/// (the latter paired with the Manila error).
struct FixtureGate {
  PauliTransferMatrix target;
  ErrorMatrix error;
};
FixtureGate fixture_gate(const std::string& gate);

}  // namespace mqpt
