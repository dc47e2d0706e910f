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

#include "mqpt/pauli.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "mqpt/errors.hpp"

namespace mqpt {

namespace {

constexpr Complex kI{0.0, 1.0};

template <typename Value, typename Build>
const Value& cached(int n, Build build) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const Value>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const Value>(build(n));
  return *slot;
}

PauliBasis build_pauli_basis(int n) {
  const CMatrix singles[4] = {pauli_i(), pauli_x(), pauli_y(), pauli_z()};
  std::vector<CMatrix> ops{CMatrix::Identity(1, 1)};
  for (int q = 0; q < n; ++q) {
    std::vector<CMatrix> next;
    next.reserve(ops.size() * 4);
    for (const auto& op : ops)
      for (const auto& s : singles) next.push_back(kron(op, s));
    ops = std::move(next);
  }
  return PauliBasis{n, std::move(ops)};
}

BasisChangeUnitary build_basis_change(int n) {
  const auto& basis = pauli_basis(n);
  const Index d = basis.dim();
  const Index dd = d * d;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  CMatrix u(dd, dd);
  // Row k is <<P_k| / sqrt(d): entry (k, col*d + row) = conj(P_k(row, col)).
  for (Index k = 0; k < dd; ++k) {
    const auto& p = basis.operators[static_cast<std::size_t>(k)];
    for (Index col = 0; col < d; ++col)
      for (Index row = 0; row < d; ++row)
        u(k, col * d + row) = std::conj(p(row, col)) * norm;
  }
  return BasisChangeUnitary{n, std::move(u)};
}

}  // namespace

int qubits_for_dimension(Index d) {
  if (d < 2 || (d & (d - 1)) != 0)
    throw InvalidArgument("dimension " + std::to_string(d) +
                          " is not a power of two >= 2");
  int n = 0;
  while ((Index{1} << n) < d) ++n;
  return n;
}

int qubits_for_superdimension(Index dd) {
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dd))));
  if (d * d != dd)
    throw InvalidArgument("superoperator dimension " + std::to_string(dd) +
                          " is not a perfect square");
  return qubits_for_dimension(d);
}

std::string PauliBasis::label(Index k) const {
  static constexpr char kNames[] = {'I', 'X', 'Y', 'Z'};
  std::string out(static_cast<std::size_t>(n), 'I');
  for (int q = n - 1; q >= 0; --q) {
    out[static_cast<std::size_t>(q)] = kNames[k % 4];
    k /= 4;
  }
  return out;
}

const PauliBasis& pauli_basis(int n) {
  if (n < 1) throw InvalidArgument("pauli_basis: qubit count must be >= 1");
  return cached<PauliBasis>(n, build_pauli_basis);
}

const BasisChangeUnitary& basis_change_unitary(int n) {
  if (n < 1)
    throw InvalidArgument("basis_change_unitary: qubit count must be >= 1");
  return cached<BasisChangeUnitary>(n, build_basis_change);
}

int DensityVector::qubits() const {
  return qubits_for_superdimension(coefficients.size());
}

Vector pauli_coefficients(const CMatrix& op) {
  const int n = qubits_for_dimension(op.rows());
  const auto& basis = pauli_basis(n);
  Vector out(basis.size());
  for (Index k = 0; k < basis.size(); ++k)
    out(k) = (basis.operators[static_cast<std::size_t>(k)].cwiseProduct(
                  op.transpose()))
                 .sum()
                 .real();
  return out;
}

DensityVector vectorize(const CMatrix& rho, Convention convention) {
  if (rho.rows() != rho.cols())
    throw InvalidArgument("vectorize: matrix is not square");
  const int n = qubits_for_dimension(rho.rows());
  const Index d = rho.rows();
  DensityVector v;
  v.convention = convention;
  if (convention == Convention::column_stacking) {
    v.coefficients = Eigen::Map<const CVector>(rho.data(), d * d);
    return v;
  }
  const auto& basis = pauli_basis(n);
  v.coefficients.resize(basis.size());
  for (Index k = 0; k < basis.size(); ++k)
    v.coefficients(k) =
        (basis.operators[static_cast<std::size_t>(k)].cwiseProduct(rho.transpose()))
            .sum();
  return v;
}

CMatrix devectorize(const DensityVector& v) {
  const int n = qubits_for_superdimension(v.coefficients.size());
  const Index d = Index{1} << n;
  if (v.convention == Convention::column_stacking)
    return Eigen::Map<const CMatrix>(v.coefficients.data(), d, d);
  const auto& basis = pauli_basis(n);
  CMatrix rho = CMatrix::Zero(d, d);
  for (Index k = 0; k < basis.size(); ++k)
    rho += v.coefficients(k) * basis.operators[static_cast<std::size_t>(k)];
  return rho / static_cast<double>(d);
}

CMatrix pauli_i() { return CMatrix::Identity(2, 2); }

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace mqpt
