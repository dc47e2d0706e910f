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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mqpt/channel.hpp"
#include "mqpt/noise.hpp"
#include "mqpt/solvers.hpp"

namespace mqpt {

/// Batch settings. The text form is one `key = value` per line, `#` starts
/// a comment, and lists are comma separated:
///
///   gate = sqrtx              # sqrtx | cnot10 | cnot01 | custom
///   target_file = t.json      # custom only (unitary or PTM file)
///   error_file = e.json       # custom + fixture source
///   error_source = fixture    # fixture | random
///   passes = 1, 5, 17
///   shots = 10000, 100000     # 0 = exact probabilities
///   repetitions = 50
///   methods = iterative, sylvester, extended_sylvester
///   spam_infidelity = 2e-4
///   spam_coherent_fraction = 0
///   readout_error = 3e-3
///   mitigate_readout = false
///   project_psd = false
///   seed = 1
///   output_dir = out
///   random_seed = 7                 # random source
///   hamiltonian_strength = 0.01
///   dissipation_strength = 0.001
///   collapse_operators = 3
///   target_infidelity = 2e-4        # optional calibration
///   diamond_tolerance = 1e-6
///   threads = 1
///   mode = batch                    # batch | populations
///   populations_max_m = 100
struct ExperimentConfig {
  std::string gate = "sqrtx";
  std::string target_file;
  std::string error_file;
  std::string error_source = "fixture";
  std::vector<int> passes{1};
  std::vector<std::int64_t> shots{0};
  int repetitions = 1;
  std::vector<Method> methods{Method::iterative};
  NoiseModel noise;
  bool project_psd = false;
  std::uint64_t seed = 0;
  std::string output_dir = "mqpt_out";
  LindbladParameters random_error;
  std::optional<double> target_infidelity;
  double diamond_tolerance = 1e-6;
  int threads = 1;
  std::string mode = "batch";
  int populations_max_m = 100;
};

/// Throws ConfigError with the offending line on malformed input.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Target and ground-truth error described by the config.
FixtureGate resolve_gate(const ExperimentConfig& config);

/// Throws ConfigError if a method cannot handle a pass count, repetitions
/// is < 1, or lists are empty.
void validate_config(const ExperimentConfig& config, const PauliTransferMatrix& target);

struct TomographyRecord {
  std::string gate;
  std::string method;
  int passes = 1;
  std::int64_t shots = 0;
  int repetition = 0;
  std::uint64_t seed = 0;
  /// Infidelity of T + E_N.
  double infidelity = 0.0;
  /// || E_N ||_diamond.
  double diamond = 0.0;
  /// || E_N - E ||_diamond.
  std::optional<double> differential_diamond;
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
  /// Recovered single-pass error E_N.
  Matrix error;
};

struct BetaFit {
  double a = 0.0;
  double b = 0.0;
  double scale = 0.0;
};

/// Method-of-moments fit of samples / scale with scale = 1.05 max(samples).
/// Throws InvalidArgument for fewer than 4 or non-positive samples and
/// NumericalError for zero variance.
BetaFit fit_beta(const std::vector<double>& samples);

/// Aggregate over the repetitions of one (N, n_s, method).
struct GroupSummary {
  std::string method;
  int passes = 1;
  std::int64_t shots = 0;
  int count = 0;
  Matrix mean_error;
  double median_diamond = 0.0;
  std::optional<double> median_differential;
  std::optional<BetaFit> differential_fit;
};

struct BatchResult {
  std::vector<TomographyRecord> records;
  std::vector<GroupSummary> groups;
};

/// Records are ordered by (N, n_s, repetition, method) following the
/// config lists. Each (grid point, repetition) gets its own seed and one
/// tomography shared by all methods.
BatchResult run_batch(const ExperimentConfig& config);

/// Seed of repetition `rep` at grid index `grid` (N-major over shots).
std::uint64_t repetition_seed(std::uint64_t base, std::size_t grid, int rep);

std::vector<GroupSummary> summarize(const std::vector<TomographyRecord>& records);

double median(std::vector<double> values);

/// Writes summary.csv, records/*.json and groups.json into `directory`.
/// Throws InvalidArgument for no records and IoError on write failures.
void emit(const BatchResult& result, const std::string& directory);
/// Summary CSV text; byte-identical for identical records.
std::string summary_csv(const std::vector<TomographyRecord>& records);
std::string record_to_json(const TomographyRecord& record);
TomographyRecord record_from_json(const std::string& text);
/// Reads records/*.json back in emission order.
std::vector<TomographyRecord> load_records(const std::string& directory);

/// Populations (p00, p01, p10, p11) of S^M |00>>, taken from 1-based
/// components 1, 6, 11, 16 of the column-stacked state.
struct Populations {
  std::array<double, 4> p{};
  /// Largest imaginary part among the four components.
  double imaginary_residue = 0.0;
};

Populations multipass_populations(const LiouvilleSuperoperator& s, int m);
/// One entry per M = 0..max_m.
std::vector<Populations> population_series(const LiouvilleSuperoperator& s, int max_m);

/// Direct-vs-indirect comparison on a simulated device: the configured
/// gate's target plus error is the ground truth. For each N in
/// config.passes the single-pass channel is recovered (first method) from
/// `repetitions` tomographies and its predicted populations are averaged;
/// the direct series is sampled from the true channel with readout noise.
struct PopulationStudy {
  std::vector<int> passes;
  /// predicted[i][M] for passes[i].
  std::vector<std::vector<std::array<double, 4>>> predicted;
  std::vector<std::array<double, 4>> direct;
  std::vector<std::array<double, 4>> ideal_truth;
};

PopulationStudy run_population_study(const ExperimentConfig& config);
std::string population_csv(const PopulationStudy& study);

}  // namespace mqpt
