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

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mqpt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Number of qubits n for a Hilbert-space dimension d = 2^n. Throws
/// InvalidArgument if d is not a power of two (d = 1 is rejected).
int qubits_for_dimension(Index d);

/// Number of qubits n for a superoperator dimension d^2 = 4^n.
int qubits_for_superdimension(Index dd);

/// n-qubit Pauli operator basis.
///
/// Operators are ordered tensor-lexicographically over (I, X, Y, Z), the
/// leftmost Kronecker factor varying slowest: for two qubits the order is
/// II, IX, IY, IZ, XI, ..., ZZ. The leftmost factor is the most significant
/// bit of computational-basis labels.
struct PauliBasis {
  int n = 0;
  std::vector<CMatrix> operators;

  Index dim() const { return Index{1} << n; }
  Index size() const { return static_cast<Index>(operators.size()); }
  /// Label such as "IX" for operator k.
  std::string label(Index k) const;
};

/// Cached basis for n qubits. The reference stays valid for the lifetime of
/// the program. Throws InvalidArgument for n < 1.
const PauliBasis& pauli_basis(int n);

enum class Convention { pauli, column_stacking };

/// Vectorized density matrix. Pauli coefficients are Tr[P_k rho] (so a
/// single-qubit state maps to (1, x, y, z)); column stacking lists
/// rho_11, rho_21, ..., rho_dd.
struct DensityVector {
  CVector coefficients;
  Convention convention = Convention::pauli;

  int qubits() const;
};

DensityVector vectorize(const CMatrix& rho, Convention convention);
CMatrix devectorize(const DensityVector& v);

/// Real Pauli coefficient vector of a Hermitian operator.
Vector pauli_coefficients(const CMatrix& op);

/// Unitary U = sum_k |c_k><<P_k| / sqrt(d) mapping column-stacked vectors to
/// normalized Pauli coefficients. Conversions use S = U^dag R U.
struct BasisChangeUnitary {
  int n = 0;
  CMatrix matrix;
};

/// Cached per n, like pauli_basis().
const BasisChangeUnitary& basis_change_unitary(int n);

/// Single-qubit Pauli matrices.
CMatrix pauli_i();
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

/// Kronecker product A (x) B with A the left (most significant) factor.
CMatrix kron(const CMatrix& a, const CMatrix& b);
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace mqpt
