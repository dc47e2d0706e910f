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

#include "mqpt/solvers.hpp"

#include <cmath>
#include <limits>

#include <Eigen/LU>

namespace mqpt {

namespace {

void require_same_shape(const PauliTransferMatrix& t, const PauliTransferMatrix& r_n) {
  if (t.superdim() != r_n.superdim())
    throw InvalidArgument("recovery: target and multipass channel dimensions differ");
}

bool is_involutary(const Matrix& t) {
  const Matrix id = Matrix::Identity(t.rows(), t.cols());
  return (t * t - id).cwiseAbs().maxCoeff() < 1e-10;
}

Matrix vec_to_matrix(const Vector& v, Index rows) {
  return Eigen::Map<const Matrix>(v.data(), rows, rows);
}

Vector matrix_to_vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

/// Kronecker operators of the linearized multipass map on column-major
/// vec(E): forward K = sum_s (T^s)^T (x) T^-s, adjoint-like G = sum_q
/// (T^-q)^T (x) T^q.
struct ExtendedOperators {
  Matrix forward;
  Matrix backward;
  Vector rhs;
};

ExtendedOperators build_extended(const Matrix& t, const Matrix& r_n, int passes) {
  const Index dd = t.rows();
  Eigen::FullPivLU<Matrix> lu(t);
  if (!lu.isInvertible()) throw InvalidArgument("extended Sylvester: target is singular");
  const Matrix t_inv = lu.inverse();
  ExtendedOperators ops;
  ops.forward = Matrix::Zero(dd * dd, dd * dd);
  ops.backward = Matrix::Zero(dd * dd, dd * dd);
  Matrix tp = Matrix::Identity(dd, dd);
  Matrix tm = Matrix::Identity(dd, dd);
  for (int s = 0; s < passes; ++s) {
    ops.forward += kron(Matrix(tp.transpose()), tm);
    ops.backward += kron(Matrix(tm.transpose()), tp);
    tp = tp * t;
    tm = tm * t_inv;
  }
  // After the loop tm = T^-N, so T^(1-N) = T * tm.
  const Matrix e_n = t * tm * r_n - t;
  ops.rhs = matrix_to_vec(e_n);
  return ops;
}

}  // namespace

RecoveryResult iterative_recover(const PauliTransferMatrix& t,
                                 const PauliTransferMatrix& r_n, int passes,
                                 const IterativeConfig& cfg) {
  require_same_shape(t, r_n);
  if (!(cfg.alpha > 0.0 && cfg.alpha <= 1.0))
    throw InvalidArgument("iterative_recover: alpha must lie in (0, 1]");
  if (!(cfg.tolerance > 0.0)) throw InvalidArgument("iterative_recover: tolerance must be > 0");
  if (cfg.max_iterations < 0)
    throw InvalidArgument("iterative_recover: max_iterations must be >= 0");
  if (!valid_pass_count(t, passes)) {
    const auto order = target_order(t);
    throw InvalidArgument("iterative_recover: N=" + std::to_string(passes) +
                          " is not 1 mod the target order (" +
                          (order ? std::to_string(*order) : std::string("none")) + ")");
  }
  const Index dd = t.superdim();
  Matrix e = Matrix::Zero(dd, dd);
  RecoveryResult out;
  for (int it = 0;; ++it) {
    const Matrix delta = r_n.matrix() - matrix_power(Matrix(t.matrix() + e), passes);
    out.residual = delta.norm();
    out.iterations = it;
    if (!std::isfinite(out.residual)) {
      out.diverged = true;
      break;
    }
    if (out.residual <= cfg.tolerance) {
      out.converged = true;
      break;
    }
    if (it == cfg.max_iterations) break;
    e += cfg.alpha * delta;
  }
  out.error = ErrorMatrix(t.qubits(), std::move(e));
  return out;
}

ErrorMatrix sylvester_recover_involutary(const PauliTransferMatrix& t,
                                         const PauliTransferMatrix& r_n, int m) {
  require_same_shape(t, r_n);
  if (m < 0) throw InvalidArgument("sylvester_recover_involutary: m must be >= 0");
  if (!is_involutary(t.matrix()))
    throw InvalidArgument("sylvester_recover_involutary: target is not involutary");
  const Index dd = t.superdim();
  const Matrix id = Matrix::Identity(dd, dd);
  const Matrix a = (m + 1.0) * t.matrix();
  const Matrix b = static_cast<double>(m) * t.matrix();
  const Matrix c = t.matrix() * r_n.matrix() - id;
  // vec(A E + E B) = (I (x) A + B^T (x) I) vec(E).
  const Matrix big = kron(id, a) + kron(Matrix(b.transpose()), id);
  Eigen::PartialPivLU<Matrix> lu(big);
  const Vector x = lu.solve(matrix_to_vec(c));
  return ErrorMatrix(t.qubits(), vec_to_matrix(x, dd));
}

double sylvester_residual(const PauliTransferMatrix& t, const PauliTransferMatrix& r_n,
                          int m, const Matrix& e) {
  const Matrix id = Matrix::Identity(t.superdim(), t.superdim());
  return ((m + 1.0) * t.matrix() * e + static_cast<double>(m) * e * t.matrix() -
          (t.matrix() * r_n.matrix() - id))
      .norm();
}

RecoveryResult extended_sylvester_recover(const PauliTransferMatrix& t,
                                          const PauliTransferMatrix& r_n, int passes,
                                          const ExtendedSylvesterConfig& cfg) {
  require_same_shape(t, r_n);
  if (passes < 1) throw InvalidArgument("extended_sylvester_recover: N must be >= 1");
  if (!(cfg.mu > 0.0)) throw InvalidArgument("extended_sylvester_recover: mu must be > 0");
  if (!(cfg.tolerance > 0.0))
    throw InvalidArgument("extended_sylvester_recover: tolerance must be > 0");
  if (cfg.max_iterations < 0)
    throw InvalidArgument("extended_sylvester_recover: max_iterations must be >= 0");
  const Index dd = t.superdim();
  const auto ops = build_extended(t.matrix(), r_n.matrix(), passes);

  Vector e = Vector::Zero(dd * dd);
  if (cfg.initial_error) {
    if (cfg.initial_error->rows() != dd || cfg.initial_error->cols() != dd)
      throw InvalidArgument("extended_sylvester_recover: initial error has wrong size");
    e = matrix_to_vec(*cfg.initial_error);
  }
  RecoveryResult out;
  Vector best = e;
  double best_residual = std::numeric_limits<double>::infinity();
  int best_iteration = 0;
  for (int it = 0;; ++it) {
    const Vector r = ops.rhs - ops.forward * e;
    const double residual = r.norm();
    if (!std::isfinite(residual) || residual > 10.0 * best_residual) {
      out.diverged = true;
      break;
    }
    if (residual < best_residual) {
      best_residual = residual;
      best = e;
      best_iteration = it;
    }
    if (residual <= cfg.tolerance) {
      out.converged = true;
      break;
    }
    if (it == cfg.max_iterations) break;
    e.noalias() += cfg.mu * (ops.backward * r);
  }
  out.error = ErrorMatrix(t.qubits(), vec_to_matrix(best, dd));
  out.residual = best_residual;
  out.iterations = best_iteration;
  return out;
}

double extended_sylvester_residual(const PauliTransferMatrix& t,
                                   const PauliTransferMatrix& r_n, int passes,
                                   const Matrix& e) {
  const auto ops = build_extended(t.matrix(), r_n.matrix(), passes);
  return (ops.rhs - ops.forward * matrix_to_vec(e)).norm();
}

SecondOrderTerms second_order_terms(const PauliTransferMatrix& t, const Matrix& e, int m) {
  if (m < 0) throw InvalidArgument("second_order_terms: m must be >= 0");
  if (!is_involutary(t.matrix()))
    throw InvalidArgument("second_order_terms: target is not involutary");
  if (e.rows() != t.superdim() || e.cols() != t.superdim())
    throw InvalidArgument("second_order_terms: dimension mismatch");
  const Matrix& tm = t.matrix();
  const Matrix e2 = e * e;
  return SecondOrderTerms{tm * e2 + e * tm * e + e2 * tm, tm * e * tm * e * tm};
}

Matrix second_order_expansion(const PauliTransferMatrix& t, const Matrix& e, int m) {
  const auto terms = second_order_terms(t, e, m);
  const double md = m;
  return t.matrix() + (md + 1.0) * e + md * t.matrix() * e * t.matrix() +
         0.5 * md * (md + 1.0) * terms.ea2 + 0.5 * md * (md - 1.0) * terms.eb2;
}

Method parse_method(const std::string& name) {
  if (name == "iterative") return Method::iterative;
  if (name == "sylvester" || name == "linear") return Method::sylvester;
  if (name == "extended_sylvester" || name == "extsylv") return Method::extended_sylvester;
  throw InvalidArgument("unknown method \"" + name + "\"");
}

std::string method_name(Method m) {
  switch (m) {
    case Method::iterative: return "iterative";
    case Method::sylvester: return "sylvester";
    case Method::extended_sylvester: return "extended_sylvester";
  }
  return "unknown";
}

RecoveryResult recover(Method method, const PauliTransferMatrix& t,
                       const PauliTransferMatrix& r_n, int passes) {
  switch (method) {
    case Method::iterative: return iterative_recover(t, r_n, passes);
    case Method::extended_sylvester: return extended_sylvester_recover(t, r_n, passes);
    case Method::sylvester: {
      if (passes < 1 || passes % 2 == 0)
        throw InvalidArgument("sylvester: N must be odd, got " + std::to_string(passes));
      const int m = (passes - 1) / 2;
      RecoveryResult out;
      out.error = sylvester_recover_involutary(t, r_n, m);
      out.residual = sylvester_residual(t, r_n, m, out.error.matrix());
      out.converged = true;
      return out;
    }
  }
  throw InvalidArgument("unknown method");
}

}  // namespace mqpt
