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

#include <optional>

#include "mqpt/channel.hpp"

namespace mqpt {

struct Fidelity {
  double fidelity = 1.0;
  double infidelity = 0.0;
};

/// F = Tr[T^T R] / d^2 for a unitary target T.
Fidelity process_fidelity(const PauliTransferMatrix& t, const PauliTransferMatrix& r);
Fidelity process_fidelity(const Matrix& t, const Matrix& r);

struct DiamondSettings {
  /// Absolute gap between certified lower and upper bounds.
  double tolerance = 1e-6;
  int max_iterations = 50000;
};

struct DiamondResult {
  /// Midpoint of [lower, upper].
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Diamond norm of the Hermiticity-preserving map with PTM-basis matrix e
/// (typically a difference of two channels). Bounds come from a feasible
/// input state (lower) and a shifted feasible dual point (upper).
DiamondResult solve_diamond_norm(const Matrix& e, const DiamondSettings& settings = {});

/// Same for a Hermitian Choi matrix (input factor first) of a map on
/// d_in-dimensional inputs.
DiamondResult solve_diamond_norm_choi(const CMatrix& j, Index d_in,
                                      const DiamondSettings& settings = {});

/// Value of solve_diamond_norm; throws ConvergenceError when the gap was
/// not closed within the budget.
double diamond_norm(const Matrix& e, double tol = 1e-6);

/// Closed-form diamond distance of the unitary channels of u and v.
double unitary_diamond_oracle(const CMatrix& u, const CMatrix& v);

/// e_F <= diamond <= d sqrt(e_F), each within 1e-6.
bool diamond_bound_check(double infidelity, double diamond, Index d);

/// || e_measured - e_actual ||_diamond.
double differential_diamond(const Matrix& e_measured, const Matrix& e_actual,
                            double tol = 1e-6);

struct MetricReport {
  double fidelity = 1.0;
  double infidelity = 0.0;
  double diamond_norm = 0.0;
  double diamond_solver_gap = 0.0;
  std::optional<double> differential_diamond;
};

/// Fidelity and diamond norm of r against t; the differential diamond
/// against `actual_error` when given.
MetricReport evaluate_metrics(const PauliTransferMatrix& t, const PauliTransferMatrix& r,
                              const std::optional<Matrix>& actual_error = std::nullopt,
                              double tol = 1e-6);

}  // namespace mqpt
