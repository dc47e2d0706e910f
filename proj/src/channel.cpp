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

#include "mqpt/channel.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace mqpt {

namespace {

constexpr double kImagTolerance = 1e-10;
constexpr double kUnitaryTolerance = 1e-10;

template <typename M>
M power_impl(const M& r, int power) {
  if (power < 0) throw InvalidArgument("matrix power: exponent must be >= 0");
  if (r.rows() != r.cols()) throw InvalidArgument("matrix power: not square");
  M result = M::Identity(r.rows(), r.cols());
  M base = r;
  while (power > 0) {
    if (power & 1) result = result * base;
    power >>= 1;
    if (power > 0) base = base * base;
  }
  return result;
}

void require_unitary(const CMatrix& u, const char* what) {
  if (u.rows() != u.cols())
    throw InvalidArgument(std::string(what) + ": matrix is not square");
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > kUnitaryTolerance)
    throw InvalidArgument(std::string(what) + ": matrix is not unitary");
}

}  // namespace

PauliTransferMatrix identity_ptm(int n) {
  const Index dd = Index{1} << (2 * n);
  return PauliTransferMatrix(n, Matrix::Identity(dd, dd));
}

LiouvilleSuperoperator liouville_from_ptm(const PauliTransferMatrix& r) {
  const CMatrix& u = basis_change_unitary(r.qubits()).matrix;
  return LiouvilleSuperoperator(r.qubits(),
                                u.adjoint() * r.matrix().cast<Complex>() * u);
}

PauliTransferMatrix ptm_from_liouville(const LiouvilleSuperoperator& s) {
  const CMatrix& u = basis_change_unitary(s.qubits()).matrix;
  const CMatrix r = u * s.matrix() * u.adjoint();
  const double residue = r.imag().cwiseAbs().maxCoeff();
  if (residue > kImagTolerance)
    throw NumericalError("ptm_from_liouville: imaginary residue " +
                         std::to_string(residue) + " exceeds 1e-10");
  return PauliTransferMatrix(s.qubits(), r.real());
}

PauliTransferMatrix target_ptm(const CMatrix& unitary) {
  require_unitary(unitary, "target_ptm");
  const int n = qubits_for_dimension(unitary.rows());
  const CMatrix s = kron(CMatrix(unitary.conjugate()), unitary);
  return ptm_from_liouville(LiouvilleSuperoperator(n, s));
}

ChoiMatrix choi_from_ptm(const Matrix& r) {
  const int n = qubits_for_superdimension(r.rows());
  if (r.cols() != r.rows()) throw InvalidArgument("choi_from_ptm: not square");
  const auto& basis = pauli_basis(n);
  const Index dd = basis.size();
  CMatrix c = CMatrix::Zero(dd, dd);
  for (Index j = 0; j < dd; ++j) {
    const CMatrix pjt = basis.operators[static_cast<std::size_t>(j)].transpose();
    for (Index i = 0; i < dd; ++i) {
      if (r(i, j) == 0.0) continue;
      c += r(i, j) * kron(pjt, basis.operators[static_cast<std::size_t>(i)]);
    }
  }
  c /= static_cast<double>(basis.dim());
  return ChoiMatrix(n, std::move(c));
}

Matrix ptm_matrix_from_choi(const CMatrix& c) {
  const int n = qubits_for_superdimension(c.rows());
  const auto& basis = pauli_basis(n);
  const Index dd = basis.size();
  Matrix r(dd, dd);
  for (Index j = 0; j < dd; ++j) {
    const CMatrix pjt = basis.operators[static_cast<std::size_t>(j)].transpose();
    for (Index i = 0; i < dd; ++i) {
      // Tr[C K] = sum_ab C_ab K_ba.
      const CMatrix k = kron(pjt, basis.operators[static_cast<std::size_t>(i)]);
      r(i, j) = c.cwiseProduct(k.transpose()).sum().real();
    }
  }
  return r / static_cast<double>(basis.dim());
}

PauliTransferMatrix ptm_from_choi(const ChoiMatrix& c) {
  return PauliTransferMatrix(c.qubits(), ptm_matrix_from_choi(c.matrix()));
}

LiouvilleSuperoperator liouville_from_choi(const ChoiMatrix& c) {
  const Index d = c.dim();
  CMatrix s(d * d, d * d);
  // C[(a,i),(b,j)] = Phi(|a><b|)_ij = S[(j,i),(b,a)] with column-major pairs.
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b)
      for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
          s(j * d + i, b * d + a) = c.matrix()(a * d + i, b * d + j);
  return LiouvilleSuperoperator(c.qubits(), std::move(s));
}

DensityVector apply_channel(const PauliTransferMatrix& r, const DensityVector& rho0) {
  if (rho0.convention != Convention::pauli)
    throw InvalidArgument("apply_channel: state must be in the Pauli convention");
  if (rho0.coefficients.size() != r.superdim())
    throw InvalidArgument("apply_channel: dimension mismatch");
  DensityVector out;
  out.convention = Convention::pauli;
  out.coefficients = r.matrix().cast<Complex>() * rho0.coefficients;
  return out;
}

Matrix matrix_power(const Matrix& r, int power) { return power_impl(r, power); }
CMatrix matrix_power(const CMatrix& r, int power) { return power_impl(r, power); }

PauliTransferMatrix channel_power(const PauliTransferMatrix& r, int power) {
  return PauliTransferMatrix(r.qubits(), power_impl(r.matrix(), power));
}

CMatrix partial_trace_output(const CMatrix& m, Index d_in, Index d_out) {
  if (m.rows() != d_in * d_out || m.cols() != d_in * d_out)
    throw InvalidArgument("partial_trace_output: dimension mismatch");
  CMatrix out = CMatrix::Zero(d_in, d_in);
  for (Index a = 0; a < d_in; ++a)
    for (Index b = 0; b < d_in; ++b)
      for (Index i = 0; i < d_out; ++i) out(a, b) += m(a * d_out + i, b * d_out + i);
  return out;
}

CptpReport is_cptp(const ChoiMatrix& c, double tol) {
  if (!(tol > 0)) throw InvalidArgument("is_cptp: tol must be > 0");
  const CMatrix herm = 0.5 * (c.matrix() + c.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm, Eigen::EigenvaluesOnly);
  CptpReport report;
  report.min_eigenvalue = eig.eigenvalues().minCoeff();
  const Index d = c.dim();
  report.trace_residual =
      (partial_trace_output(c.matrix(), d, d) - CMatrix::Identity(d, d))
          .cwiseAbs()
          .maxCoeff();
  const double herm_residual = (c.matrix() - herm).cwiseAbs().maxCoeff();
  report.cptp = report.min_eigenvalue >= -tol && report.trace_residual <= tol &&
                herm_residual <= tol;
  return report;
}

std::optional<int> target_order(const PauliTransferMatrix& t, int max_k) {
  const Matrix id = Matrix::Identity(t.superdim(), t.superdim());
  Matrix p = t.matrix();
  for (int k = 1; k <= max_k; ++k) {
    if ((p - id).cwiseAbs().maxCoeff() < 1e-10) return k;
    p = p * t.matrix();
  }
  return std::nullopt;
}

bool valid_pass_count(const PauliTransferMatrix& t, int passes, int max_k) {
  if (passes < 1) return false;
  const auto order = target_order(t, max_k);
  if (!order) return passes == 1;
  return (passes - 1) % *order == 0;
}

CMatrix sqrt_x_unitary() {
  const Complex a{0.5, 0.5}, b{0.5, -0.5};
  CMatrix m(2, 2);
  m << a, b, b, a;
  return m;
}

CMatrix cnot10_unitary() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return m;
}

CMatrix cnot01_unitary() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(2, 2) = m(1, 3) = m(3, 1) = 1.0;
  return m;
}

}  // namespace mqpt
