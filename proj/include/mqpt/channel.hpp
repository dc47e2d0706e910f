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
#include <utility>

#include "mqpt/errors.hpp"
#include "mqpt/pauli.hpp"

namespace mqpt {

/// A d^2 x d^2 channel matrix tagged with its representation.
///
/// The tag keeps PTMs, error matrices, Liouville superoperators and Choi
/// matrices from being mixed up; the constructor checks that the matrix is
/// 4^n x 4^n.
template <typename Scalar, typename Tag>
class ChannelMatrix {
 public:
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  ChannelMatrix() = default;

  ChannelMatrix(int n, MatrixType matrix) : n_(n), matrix_(std::move(matrix)) {
    if (n < 1) throw InvalidArgument("channel matrix: qubit count must be >= 1");
    const Index dd = Index{1} << (2 * n);
    if (matrix_.rows() != dd || matrix_.cols() != dd)
      throw InvalidArgument("channel matrix: expected " + std::to_string(dd) +
                            "x" + std::to_string(dd) + " for n=" +
                            std::to_string(n) + ", got " +
                            std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()));
  }

  /// Infers n from the matrix size.
  explicit ChannelMatrix(const MatrixType& matrix)
      : ChannelMatrix(qubits_for_superdimension(matrix.rows()), matrix) {}

  int qubits() const { return n_; }
  Index dim() const { return Index{1} << n_; }
  Index superdim() const { return matrix_.rows(); }
  const MatrixType& matrix() const { return matrix_; }

 private:
  int n_ = 0;
  MatrixType matrix_;
};

struct PtmTag;
struct ErrorTag;
struct LiouvilleTag;
struct ChoiTag;

/// Real PTM acting on Pauli-coefficient vectors (1, x, y, z, ...).
using PauliTransferMatrix = ChannelMatrix<double, PtmTag>;
/// Difference R - T of two PTMs; generally not a channel.
using ErrorMatrix = ChannelMatrix<double, ErrorTag>;
/// Complex superoperator acting on column-stacked density matrices.
using LiouvilleSuperoperator = ChannelMatrix<Complex, LiouvilleTag>;
/// Unnormalized Choi matrix sum_ab |a><b| (x) Phi(|a><b|), input factor
/// first; Tr C = d for trace-preserving channels.
using ChoiMatrix = ChannelMatrix<Complex, ChoiTag>;

PauliTransferMatrix identity_ptm(int n);

LiouvilleSuperoperator liouville_from_ptm(const PauliTransferMatrix& r);
/// Throws NumericalError if the imaginary residue exceeds 1e-10.
PauliTransferMatrix ptm_from_liouville(const LiouvilleSuperoperator& s);

/// PTM of the unitary channel rho -> T rho T^dag. Throws InvalidArgument if
/// T is not unitary to 1e-10.
PauliTransferMatrix target_ptm(const CMatrix& unitary);

/// C = (1/d) sum_ij R_ij P_j^T (x) P_i.
ChoiMatrix choi_from_ptm(const Matrix& r);
inline ChoiMatrix choi_from_ptm(const PauliTransferMatrix& r) {
  return choi_from_ptm(r.matrix());
}
/// R_ij = (1/d) Tr[C (P_j^T (x) P_i)].
PauliTransferMatrix ptm_from_choi(const ChoiMatrix& c);
/// Same map without forcing a channel type; used for error matrices.
Matrix ptm_matrix_from_choi(const CMatrix& c);

/// Liouville superoperator from a Choi matrix by index reshuffling.
LiouvilleSuperoperator liouville_from_choi(const ChoiMatrix& c);

/// R |rho0>> in the Pauli convention.
DensityVector apply_channel(const PauliTransferMatrix& r, const DensityVector& rho0);

/// R^N by binary exponentiation; N = 0 gives the identity.
Matrix matrix_power(const Matrix& r, int power);
CMatrix matrix_power(const CMatrix& r, int power);
PauliTransferMatrix channel_power(const PauliTransferMatrix& r, int power);

struct CptpReport {
  bool cptp = false;
  double min_eigenvalue = 0.0;
  /// Max-abs deviation of Tr_out C from the identity.
  double trace_residual = 0.0;
};

/// Positivity of the Choi spectrum and trace preservation, both within tol.
CptpReport is_cptp(const ChoiMatrix& c, double tol);

/// Tr over the output (right) factor of an operator on in (x) out.
CMatrix partial_trace_output(const CMatrix& m, Index d_in, Index d_out);

/// Smallest k <= max_k with T^k = I to 1e-10, or nullopt.
std::optional<int> target_order(const PauliTransferMatrix& t, int max_k = 64);

/// True if N = 1 (mod order). Targets without a finite order accept only N=1.
bool valid_pass_count(const PauliTransferMatrix& t, int passes, int max_k = 64);

inline ErrorMatrix error_between(const PauliTransferMatrix& r,
                                 const PauliTransferMatrix& t) {
  return ErrorMatrix(r.qubits(), r.matrix() - t.matrix());
}

inline PauliTransferMatrix channel_with_error(const PauliTransferMatrix& t,
                                              const ErrorMatrix& e) {
  return PauliTransferMatrix(t.qubits(), t.matrix() + e.matrix());
}

/// sqrt(X) gate.
CMatrix sqrt_x_unitary();
/// CNOT with the most significant (left) qubit as control.
CMatrix cnot10_unitary();
/// CNOT with the least significant (right) qubit as control.
CMatrix cnot01_unitary();

}  // namespace mqpt
