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
#include <string>

#include "mqpt/channel.hpp"

namespace mqpt {

// Recovery of the single-pass error E = R - T from a measured R^N.
// All residuals are Frobenius norms.

struct IterativeConfig {
  double alpha = 0.01;
  double tolerance = 1e-12;
  int max_iterations = 3000;
};

struct ExtendedSylvesterConfig {
  double mu = 0.003;
  double tolerance = 1e-12;
  int max_iterations = 50000;
  std::optional<Matrix> initial_error;
};

struct RecoveryResult {
  ErrorMatrix error;
  int iterations = 0;
  /// Final residual of the method's own equation.
  double residual = 0.0;
  bool converged = false;
  bool diverged = false;
};

/// E <- E + alpha (R^N - (T + E)^N), starting from E = 0. The residual is
/// checked before each update, so an exact fixed point takes 0 iterations.
/// Throws InvalidArgument unless N = 1 (mod order of T).
RecoveryResult iterative_recover(const PauliTransferMatrix& t,
                                 const PauliTransferMatrix& r_n, int passes,
                                 const IterativeConfig& cfg = {});

/// Solves (m+1) T E + m E T = T R^(2m+1) - I by dense LU on the Kronecker
/// form. T must satisfy T^2 = I.
ErrorMatrix sylvester_recover_involutary(const PauliTransferMatrix& t,
                                         const PauliTransferMatrix& r_n, int m);

/// || A E + E B - C ||_F for the system above.
double sylvester_residual(const PauliTransferMatrix& t, const PauliTransferMatrix& r_n,
                          int m, const Matrix& e);

/// Landweber iteration on the linearized equation
///   sum_{s<N} T^-s E T^s = T^(1-N) R^N - T.
/// Stops when the residual reaches tolerance, or flags divergence when it
/// exceeds 10x its running minimum. Returns the best iterate.
RecoveryResult extended_sylvester_recover(const PauliTransferMatrix& t,
                                          const PauliTransferMatrix& r_n, int passes,
                                          const ExtendedSylvesterConfig& cfg = {});

/// Residual of the linearized equation for a given E.
double extended_sylvester_residual(const PauliTransferMatrix& t,
                                   const PauliTransferMatrix& r_n, int passes,
                                   const Matrix& e);

struct SecondOrderTerms {
  Matrix ea2;  ///< T E^2 + E T E + E^2 T
  Matrix eb2;  ///< T E T E T
};

SecondOrderTerms second_order_terms(const PauliTransferMatrix& t, const Matrix& e, int m);

/// T + (m+1)E + mTET + m(m+1)/2 Ea2 + m(m-1)/2 Eb2.
Matrix second_order_expansion(const PauliTransferMatrix& t, const Matrix& e, int m);

enum class Method { iterative, sylvester, extended_sylvester };

/// "iterative", "sylvester" (or "linear"), "extended_sylvester" (or "extsylv").
Method parse_method(const std::string& name);
std::string method_name(Method m);

/// Dispatch with default configurations. For the Sylvester method N must
/// be odd; its result reports 0 iterations and the Sylvester residual.
RecoveryResult recover(Method method, const PauliTransferMatrix& t,
                       const PauliTransferMatrix& r_n, int passes);

}  // namespace mqpt
