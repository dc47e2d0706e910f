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
#include "mqpt/noise.hpp"

namespace mqpt {

enum class Prep { z0, z1, x_plus, y_plus };
enum class Basis { x, y, z };

/// One tomography experiment. Per-qubit entries are indexed by Kronecker
/// position, index 0 being the leftmost (most significant) qubit.
struct TomographyCircuit {
  std::vector<Prep> preps;
  std::vector<Basis> bases;
  int passes = 1;

  int qubits() const { return static_cast<int>(preps.size()); }
  /// e.g. "Z0.X+|X.Z".
  std::string label() const;
};

/// 4^n * 3^n circuits, preparation-major.
std::vector<TomographyCircuit> generate_circuits(int n, int passes);

/// Outcome probabilities (index b, leftmost qubit most significant, bit 0
/// meaning the +1 eigenstate) for the circuit run on the single-pass
/// channel r. Includes SPAM and readout confusion, never mitigation.
Vector exact_probabilities(const TomographyCircuit& circuit,
                           const PauliTransferMatrix& r, const NoiseModel& noise);
/// Same with the multipass channel r^N already formed.
Vector multipass_probabilities(const TomographyCircuit& circuit, const Matrix& r_n,
                               const NoiseModel& noise);

/// One multinomial draw of `shots` outcomes.
std::vector<std::int64_t> sample_counts(const Vector& probabilities,
                                        std::int64_t shots, std::uint64_t seed);

/// Deterministic child seed for stream `index` of `base`.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Outcome data for a full circuit set. Rows hold counts (or quasi-counts
/// after mitigation); with shots == 0 they hold probabilities.
struct CountsTable {
  std::vector<TomographyCircuit> circuits;
  std::vector<Vector> counts;
  std::int64_t shots = 0;

  Vector frequencies(std::size_t i) const;
};

/// Applies the inverse confusion to every row. Throws NumericalError for a
/// singular confusion matrix.
CountsTable mitigate_readout(const CountsTable& table, const Matrix& confusion);

struct ReconstructionResult {
  ChoiMatrix choi;
  PauliTransferMatrix ptm;
  /// Euclidean norm of the least-squares residual over all frequencies.
  double residual = 0.0;
};

struct ReconstructionOptions {
  /// Clip negative Choi eigenvalues after the linear solve.
  bool project_psd = false;
};

/// Linear inversion over the d^4 real parameters of a Hermitian Choi
/// matrix. Requires the complete circuit set in generate_circuits order.
ReconstructionResult reconstruct(const CountsTable& table,
                                 const ReconstructionOptions& options = {});

/// Counts (or exact probabilities when noise.shots == 0) for the N-pass
/// circuits of channel r. Circuit i is sampled with derive_seed(seed, i).
CountsTable simulate_counts(const PauliTransferMatrix& r, int passes,
                            const NoiseModel& noise);

/// simulate_counts, optional readout mitigation, then reconstruct.
ReconstructionResult run_tomography(const PauliTransferMatrix& r, int passes,
                                    const NoiseModel& noise,
                                    const ReconstructionOptions& options = {});

/// {"shots": n_s, "passes": N, "counts": {label: [..], ...}}
std::string counts_to_json(const CountsTable& table);
CountsTable counts_from_json(const std::string& text);

}  // namespace mqpt
