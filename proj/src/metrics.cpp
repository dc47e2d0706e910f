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

#include "mqpt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mqpt/conic.hpp"

namespace mqpt {

namespace {

double trace_norm_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().sum();
}

double min_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

/// -min(h, 0) in the operator sense.
CMatrix negative_part(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  const Vector neg = (-eig.eigenvalues()).cwiseMax(0.0);
  return eig.eigenvectors() * neg.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
}

double max_eigenvalue(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().maxCoeff();
}

/// ||(sqrt(rho) (x) I) J (sqrt(rho) (x) I)||_1, the value at input rho.
double value_at_state(const CMatrix& j, const CMatrix& rho, Index d_out) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho);
  const Vector root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const CMatrix sq =
      eig.eigenvectors() * root.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  const CMatrix k = kron(sq, CMatrix(CMatrix::Identity(d_out, d_out)));
  return trace_norm_hermitian(k * j * k);
}

/// Dual program: min t s.t. t I - Tr_out Z >= 0, Z - J >= 0, Z + J >= 0,
/// with x = (t, hvec Z).
ConicProblem diamond_program(const CMatrix& j, Index d_in, Index d_out) {
  const Index big = d_in * d_out;
  const Index nz = big * big;
  const Index ns = d_in * d_in;
  ConicProblem p;
  p.a = Matrix::Zero(ns + 2 * nz, 1 + nz);
  p.b = Vector::Zero(ns + 2 * nz);
  p.c = Vector::Zero(1 + nz);
  p.c(0) = 1.0;
  p.cone_sizes = {d_in, big, big};

  p.a.block(0, 0, ns, 1) = -hvec(CMatrix::Identity(d_in, d_in));
  Vector basis = Vector::Zero(nz);
  for (Index k = 0; k < nz; ++k) {
    basis(k) = 1.0;
    p.a.block(0, 1 + k, ns, 1) = hvec(partial_trace_output(hmat(basis, big), d_in, d_out));
    basis(k) = 0.0;
  }
  p.a.block(ns, 1, nz, nz) = -Matrix::Identity(nz, nz);
  p.a.block(ns + nz, 1, nz, nz) = -Matrix::Identity(nz, nz);
  const Vector hj = hvec(j);
  p.b.segment(ns, nz) = -hj;
  p.b.segment(ns + nz, nz) = hj;
  return p;
}

}  // namespace

Fidelity process_fidelity(const Matrix& t, const Matrix& r) {
  if (t.rows() != r.rows() || t.cols() != r.cols() || t.rows() != t.cols())
    throw InvalidArgument("process_fidelity: dimension mismatch");
  const double d2 = static_cast<double>(t.rows());
  Fidelity f;
  f.infidelity = -(t.transpose() * (r - t)).trace() / d2;
  f.fidelity = 1.0 - f.infidelity;
  return f;
}

Fidelity process_fidelity(const PauliTransferMatrix& t, const PauliTransferMatrix& r) {
  return process_fidelity(t.matrix(), r.matrix());
}

DiamondResult solve_diamond_norm_choi(const CMatrix& j, Index d_in,
                                      const DiamondSettings& settings) {
  if (!(settings.tolerance > 0.0))
    throw InvalidArgument("diamond_norm: tolerance must be > 0");
  if (d_in < 1 || j.rows() % d_in != 0 || j.rows() != j.cols())
    throw InvalidArgument("diamond_norm: Choi matrix has wrong shape");
  const Index d_out = j.rows() / d_in;
  if ((j - j.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, j.cwiseAbs().maxCoeff()))
    throw InvalidArgument("diamond_norm: map is not Hermiticity preserving");

  DiamondResult out;
  const double scale = j.norm();
  if (scale == 0.0) {
    out.converged = true;
    return out;
  }
  const CMatrix jn = 0.5 * (j + j.adjoint()) / scale;
  const double tol = settings.tolerance / scale;
  const Index big = d_in * d_out;
  const CMatrix id_big = CMatrix::Identity(big, big);

  double lower =
      value_at_state(jn, CMatrix::Identity(d_in, d_in) / static_cast<double>(d_in), d_out);
  // Z = |J| is dual feasible.
  double upper = [&] {
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(jn);
    const CMatrix absj = eig.eigenvectors() *
                         eig.eigenvalues().cwiseAbs().cast<Complex>().asDiagonal() *
                         eig.eigenvectors().adjoint();
    return max_eigenvalue(partial_trace_output(absj, d_in, d_out));
  }();

  ConicSettings cs;
  cs.max_iterations = settings.max_iterations;
  ConicSolver solver(diamond_program(jn, d_in, d_out), cs);
  const Index nz = big * big;
  auto rule = [&](const ConicIterate& it) {
    const CMatrix z = hmat(it.x.segment(1, nz), big);
    // Adding the negative parts of Z - J and Z + J restores dual feasibility.
    CMatrix zf = z + negative_part(z - jn) + negative_part(z + jn);
    const double shift = std::max({0.0, -min_eigenvalue(zf - jn), -min_eigenvalue(zf + jn)});
    zf += shift * id_big;
    upper = std::min(upper, max_eigenvalue(partial_trace_output(zf, d_in, d_out)));

    CMatrix rho = hmat(it.y.head(d_in * d_in), d_in);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(rho);
    const Vector lam = eig.eigenvalues().cwiseMax(0.0);
    if (lam.sum() > 0.0) {
      rho = eig.eigenvectors() * (lam / lam.sum()).cast<Complex>().asDiagonal() *
            eig.eigenvectors().adjoint();
      lower = std::max(lower, value_at_state(jn, rho, d_out));
    }
    out.iterations = it.iteration;
    return upper - lower <= tol;
  };
  if (upper - lower <= tol) {
    out.converged = true;
  } else {
    out.converged = solver.solve(rule).converged;
  }
  out.lower = lower * scale;
  out.upper = upper * scale;
  out.gap = out.upper - out.lower;
  out.value = 0.5 * (out.lower + out.upper);
  return out;
}

DiamondResult solve_diamond_norm(const Matrix& e, const DiamondSettings& settings) {
  const auto c = choi_from_ptm(e);
  return solve_diamond_norm_choi(c.matrix(), c.dim(), settings);
}

double diamond_norm(const Matrix& e, double tol) {
  DiamondSettings s;
  s.tolerance = tol;
  const auto r = solve_diamond_norm(e, s);
  if (!r.converged)
    throw ConvergenceError("diamond_norm: gap " + std::to_string(r.gap) + " after " +
                           std::to_string(r.iterations) + " iterations");
  return r.value;
}

double unitary_diamond_oracle(const CMatrix& u, const CMatrix& v) {
  const CMatrix id = CMatrix::Identity(u.rows(), u.cols());
  if (u.rows() != v.rows() || u.rows() != u.cols() || v.rows() != v.cols())
    throw InvalidArgument("unitary_diamond_oracle: dimension mismatch");
  if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > 1e-10 ||
      (v.adjoint() * v - id).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("unitary_diamond_oracle: input is not unitary");
  Eigen::ComplexEigenSolver<CMatrix> eig(u.adjoint() * v, false);
  std::vector<double> angles;
  for (Index k = 0; k < eig.eigenvalues().size(); ++k)
    angles.push_back(std::arg(eig.eigenvalues()(k)));
  std::sort(angles.begin(), angles.end());
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double largest_gap = angles.front() + two_pi - angles.back();
  for (std::size_t k = 1; k < angles.size(); ++k)
    largest_gap = std::max(largest_gap, angles[k] - angles[k - 1]);
  // The eigenvalues occupy an arc of length 2 pi - largest_gap; the hull
  // contains the origin unless that arc is shorter than pi.
  const double arc = two_pi - largest_gap;
  const double nu = arc < std::numbers::pi ? std::cos(0.5 * arc) : 0.0;
  return 2.0 * std::sqrt(std::max(0.0, 1.0 - nu * nu));
}

bool diamond_bound_check(double infidelity, double diamond, Index d) {
  constexpr double slack = 1e-6;
  const double upper = static_cast<double>(d) * std::sqrt(std::max(0.0, infidelity));
  return infidelity <= diamond + slack && diamond <= upper + slack;
}

double differential_diamond(const Matrix& e_measured, const Matrix& e_actual, double tol) {
  if (e_measured.rows() != e_actual.rows() || e_measured.cols() != e_actual.cols())
    throw InvalidArgument("differential_diamond: dimension mismatch");
  return diamond_norm(e_measured - e_actual, tol);
}

MetricReport evaluate_metrics(const PauliTransferMatrix& t, const PauliTransferMatrix& r,
                              const std::optional<Matrix>& actual_error, double tol) {
  MetricReport rep;
  const auto f = process_fidelity(t, r);
  rep.fidelity = f.fidelity;
  rep.infidelity = f.infidelity;
  const Matrix e = r.matrix() - t.matrix();
  DiamondSettings s;
  s.tolerance = tol;
  const auto dn = solve_diamond_norm(e, s);
  if (!dn.converged)
    throw ConvergenceError("diamond_norm: gap " + std::to_string(dn.gap) + " not closed");
  rep.diamond_norm = dn.value;
  rep.diamond_solver_gap = dn.gap;
  if (actual_error) rep.differential_diamond = differential_diamond(e, *actual_error, tol);
  return rep;
}

}  // namespace mqpt
