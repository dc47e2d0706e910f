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

#include <functional>
#include <vector>

#include <Eigen/Cholesky>

#include "mqpt/pauli.hpp"

namespace mqpt {

/// Isometric real vectorization of a k x k Hermitian matrix (length k^2):
/// diagonal entries, then sqrt(2) Re and sqrt(2) Im of the strict upper
/// triangle, so that hvec(A).dot(hvec(B)) = Tr[A B].
Vector hvec(const CMatrix& h);
CMatrix hmat(const Eigen::Ref<const Vector>& v, Index k);

/// Nearest Hermitian PSD matrix in hvec coordinates.
Vector project_hpsd(const Eigen::Ref<const Vector>& v, Index k);

/// min c^T x  s.t.  A x + s = b,  s in K1 x K2 x ...
/// where each K_i is the cone of cone_sizes[i] x cone_sizes[i] Hermitian
/// PSD matrices in hvec coordinates. Rows of A are ordered by cone.
struct ConicProblem {
  Matrix a;
  Vector b;
  Vector c;
  std::vector<Index> cone_sizes;
};

struct ConicSettings {
  int max_iterations = 50000;
  /// Over-relaxation factor in (0, 2).
  double relaxation = 1.5;
  /// How often the stopping rule is evaluated.
  int check_interval = 25;
  /// Residual tolerance of the default stopping rule (relative).
  double eps = 1e-9;
};

/// Current point of the homogeneous embedding, already divided by tau.
struct ConicIterate {
  Vector x;
  Vector y;
  Vector s;
  double tau = 0.0;
  double kappa = 0.0;
  int iteration = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
};

struct ConicResult {
  ConicIterate iterate;
  bool converged = false;
};

/// Operator-splitting solver on the homogeneous self-dual embedding with a
/// dense cached factorization of I + A^T A. The dual variable y lies in K.
class ConicSolver {
 public:
  using StopRule = std::function<bool(const ConicIterate&)>;

  ConicSolver(ConicProblem problem, ConicSettings settings = {});

  /// Runs until `stop` returns true (checked every check_interval
  /// iterations while tau > 0) or the budget is exhausted. Without a rule,
  /// stops on relative primal/dual residuals and gap below eps.
  ConicResult solve(const StopRule& stop = {});

 private:
  Vector solve_linear(const Vector& w) const;
  Vector project_cone(const Vector& y) const;
  ConicIterate snapshot(const Vector& u, const Vector& v, int iteration) const;

  ConicProblem p_;
  ConicSettings settings_;
  Index n_ = 0;
  Index m_ = 0;
  Eigen::LLT<Matrix> llt_;
  Vector h_;
  Vector g_;
  double hg_ = 0.0;
};

}  // namespace mqpt
