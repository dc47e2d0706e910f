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

#include "mqpt/conic.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "mqpt/errors.hpp"

namespace mqpt {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

Vector hvec(const CMatrix& h) {
  const Index k = h.rows();
  Vector v(k * k);
  Index pos = 0;
  for (Index i = 0; i < k; ++i) v(pos++) = h(i, i).real();
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j) {
      v(pos++) = kSqrt2 * h(i, j).real();
      v(pos++) = kSqrt2 * h(i, j).imag();
    }
  return v;
}

CMatrix hmat(const Eigen::Ref<const Vector>& v, Index k) {
  if (v.size() != k * k) throw InvalidArgument("hmat: length is not k^2");
  CMatrix h(k, k);
  Index pos = 0;
  for (Index i = 0; i < k; ++i) h(i, i) = v(pos++);
  for (Index i = 0; i < k; ++i)
    for (Index j = i + 1; j < k; ++j) {
      const Complex z(v(pos) / kSqrt2, v(pos + 1) / kSqrt2);
      pos += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  return h;
}

Vector project_hpsd(const Eigen::Ref<const Vector>& v, Index k) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hmat(v, k));
  const Vector lambda = eig.eigenvalues();
  if (lambda.minCoeff() >= 0.0) return v;
  const Vector clipped = lambda.cwiseMax(0.0);
  return hvec(eig.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
              eig.eigenvectors().adjoint());
}

ConicSolver::ConicSolver(ConicProblem problem, ConicSettings settings)
    : p_(std::move(problem)), settings_(settings) {
  n_ = p_.a.cols();
  m_ = p_.a.rows();
  if (p_.b.size() != m_ || p_.c.size() != n_)
    throw InvalidArgument("conic solver: inconsistent problem dimensions");
  Index cone_total = 0;
  for (Index k : p_.cone_sizes) cone_total += k * k;
  if (cone_total != m_) throw InvalidArgument("conic solver: cone sizes do not match rows of A");
  if (!(settings_.relaxation > 0.0 && settings_.relaxation < 2.0))
    throw InvalidArgument("conic solver: relaxation must lie in (0, 2)");
  if (settings_.check_interval < 1) settings_.check_interval = 1;

  llt_.compute(Matrix::Identity(n_, n_) + p_.a.transpose() * p_.a);
  h_.resize(n_ + m_);
  h_ << p_.c, p_.b;
  Vector w(n_ + m_ + 1);
  w << h_, 0.0;
  // Reuse the block solve of M = [[I, A^T], [-A, I]] for g = M^-1 h.
  const Vector& a = h_.head(n_);
  const Vector beta = h_.tail(m_);
  const Vector x = llt_.solve(a - p_.a.transpose() * beta);
  g_.resize(n_ + m_);
  g_ << x, beta + p_.a * x;
  hg_ = h_.dot(g_);
}

Vector ConicSolver::solve_linear(const Vector& w) const {
  const Vector x = llt_.solve(w.head(n_) - p_.a.transpose() * w.segment(n_, m_));
  Vector p(n_ + m_);
  p << x, w.segment(n_, m_) + p_.a * x;
  const double tau = (w(n_ + m_) + h_.dot(p)) / (1.0 + hg_);
  Vector out(n_ + m_ + 1);
  out << p - tau * g_, tau;
  return out;
}

Vector ConicSolver::project_cone(const Vector& y) const {
  Vector out(y.size());
  Index offset = 0;
  for (Index k : p_.cone_sizes) {
    out.segment(offset, k * k) = project_hpsd(y.segment(offset, k * k), k);
    offset += k * k;
  }
  return out;
}

ConicIterate ConicSolver::snapshot(const Vector& u, const Vector& v, int iteration) const {
  ConicIterate it;
  it.tau = u(n_ + m_);
  it.kappa = v(n_ + m_);
  it.iteration = iteration;
  const double inv = it.tau > 0.0 ? 1.0 / it.tau : 0.0;
  it.x = u.head(n_) * inv;
  it.y = u.segment(n_, m_) * inv;
  it.s = v.segment(n_, m_) * inv;
  const double cx = p_.c.dot(it.x);
  const double by = p_.b.dot(it.y);
  it.primal_residual = (p_.a * it.x + it.s - p_.b).norm() / (1.0 + p_.b.norm());
  it.dual_residual = (p_.a.transpose() * it.y + p_.c).norm() / (1.0 + p_.c.norm());
  it.gap = std::abs(cx + by) / (1.0 + std::abs(cx) + std::abs(by));
  return it;
}

ConicResult ConicSolver::solve(const StopRule& stop) {
  const Index len = n_ + m_ + 1;
  Vector u = Vector::Zero(len);
  Vector v = Vector::Zero(len);
  u(len - 1) = 1.0;
  v(len - 1) = 1.0;
  const double alpha = settings_.relaxation;
  ConicResult result;
  for (int k = 1; k <= settings_.max_iterations; ++k) {
    Vector ut = solve_linear(u + v);
    ut = alpha * ut + (1.0 - alpha) * u;
    Vector un = ut - v;
    un.segment(n_, m_) = project_cone(un.segment(n_, m_));
    un(len - 1) = std::max(0.0, un(len - 1));
    v += un - ut;
    u = std::move(un);

    if (k % settings_.check_interval != 0 && k != settings_.max_iterations) continue;
    if (!(u(len - 1) > 0.0)) continue;
    result.iterate = snapshot(u, v, k);
    const bool done =
        stop ? stop(result.iterate)
             : (result.iterate.primal_residual <= settings_.eps &&
                result.iterate.dual_residual <= settings_.eps &&
                result.iterate.gap <= settings_.eps);
    if (done) {
      result.converged = true;
      return result;
    }
  }
  if (u(len - 1) > 0.0) result.iterate = snapshot(u, v, settings_.max_iterations);
  return result;
}

}  // namespace mqpt
