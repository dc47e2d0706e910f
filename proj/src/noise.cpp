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

#include "mqpt/noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string_view>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

#include "mqpt/matrix_io.hpp"

namespace mqpt {

namespace detail {
extern const std::pair<std::string_view, std::string_view> kFixtureSources[];
extern const int kFixtureCount;
}  // namespace detail

namespace {

double ptm_infidelity(const Matrix& t, const Matrix& r) {
  const double d2 = static_cast<double>(t.rows());
  return 1.0 - (t.transpose() * r).trace() / d2;
}

FixtureSet assemble(const std::vector<MatrixFile>& files) {
  auto find = [&](const std::string& name) -> const MatrixFile& {
    for (const auto& f : files)
      if (f.name == name) return f;
    throw IoError("fixture " + name + " missing");
  };
  auto ptm = [&](const std::string& name) {
    const auto& f = find(name);
    return PauliTransferMatrix(f.n, real_matrix(f));
  };
  auto err = [&](const std::string& name) {
    const auto& f = find(name);
    return ErrorMatrix(f.n, real_matrix(f));
  };
  return FixtureSet{ptm("sqrtx_target"),  err("sqrtx_error"),
                    ptm("cnot10_target"), err("cnot10_error"),
                    ptm("cnot01_target"), err("manila_error")};
}

}  // namespace

Matrix NoiseModel::confusion(int n) const {
  if (readout_confusion.size() > 0) {
    const Index d = Index{1} << n;
    if (readout_confusion.rows() != d || readout_confusion.cols() != d)
      throw InvalidArgument("noise model: confusion matrix has wrong size");
    return readout_confusion;
  }
  return mqpt::readout_confusion(n, readout_error);
}

void NoiseModel::validate(int n) const {
  if (!(spam_infidelity >= 0.0 && spam_infidelity <= 0.1))
    throw InvalidArgument("noise model: spam_infidelity must lie in [0, 0.1]");
  if (!(spam_coherent_fraction >= 0.0 && spam_coherent_fraction <= 1.0))
    throw InvalidArgument("noise model: spam_coherent_fraction must lie in [0, 1]");
  if (shots < 0) throw InvalidArgument("noise model: shots must be >= 0");
  const Matrix c = confusion(n);
  if (c.minCoeff() < 0.0 || c.maxCoeff() > 1.0)
    throw InvalidArgument("noise model: confusion entries must lie in [0, 1]");
  const Vector sums = c.colwise().sum().transpose();
  if ((sums.array() - 1.0).abs().maxCoeff() > 1e-12)
    throw InvalidArgument("noise model: confusion columns must sum to 1");
}

PauliTransferMatrix spam_error_channel(double infidelity, double coherent_fraction) {
  if (!(infidelity >= 0.0 && infidelity <= 0.1))
    throw InvalidArgument("spam_error_channel: infidelity must lie in [0, 0.1]");
  if (!(coherent_fraction >= 0.0 && coherent_fraction <= 1.0))
    throw InvalidArgument("spam_error_channel: coherent_fraction must lie in [0, 1]");
  // Rotation alone has infidelity (1 - cos)/2; the depolarizing factor
  // lambda then fixes 1 - (1 + lambda (1 + 2 cos)) / 4 = infidelity.
  const double c = 1.0 - 2.0 * coherent_fraction * infidelity;
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  const double lambda = (3.0 - 4.0 * infidelity) / (1.0 + 2.0 * c);
  Matrix r = Matrix::Zero(4, 4);
  r(0, 0) = 1.0;
  r(1, 1) = lambda;
  r(2, 2) = lambda * c;
  r(2, 3) = -lambda * s;
  r(3, 2) = lambda * s;
  r(3, 3) = lambda * c;
  return PauliTransferMatrix(1, r);
}

Matrix readout_confusion(int n, double p) {
  if (n < 1) throw InvalidArgument("readout_confusion: n must be >= 1");
  if (!(p >= 0.0 && p <= 0.5))
    throw InvalidArgument("readout_confusion: flip probability must lie in [0, 0.5]");
  Matrix single(2, 2);
  single << 1.0 - p, p, p, 1.0 - p;
  Matrix out = single;
  for (int q = 1; q < n; ++q) out = kron(out, single);
  return out;
}

PauliTransferMatrix random_lindblad_channel(int n, const LindbladParameters& params) {
  if (params.hamiltonian_strength < 0.0 || params.dissipation_strength < 0.0)
    throw InvalidArgument("random_lindblad_error: strengths must be >= 0");
  if (params.collapse_operators < 0)
    throw InvalidArgument("random_lindblad_error: collapse_operators must be >= 0");
  const auto& basis = pauli_basis(n);
  const Index d = basis.dim();
  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit;
  std::uniform_int_distribution<Index> pick(1, basis.size() - 1);

  CMatrix h(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) h(i, j) = Complex(gauss(rng), gauss(rng));
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h, Eigen::EigenvaluesOnly);
  const double spectral = eig.eigenvalues().cwiseAbs().maxCoeff();
  h *= spectral > 0.0 ? params.hamiltonian_strength / spectral : 0.0;

  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix gen = Complex(0.0, -1.0) * (kron(id, h) - kron(CMatrix(h.transpose()), id));
  for (int k = 0; k < params.collapse_operators; ++k) {
    const CMatrix& l = basis.operators[static_cast<std::size_t>(pick(rng))];
    const double gamma = params.dissipation_strength * unit(rng);
    const CMatrix ldl = l.adjoint() * l;
    gen += gamma * (kron(CMatrix(l.conjugate()), l) -
                    0.5 * (kron(id, ldl) + kron(CMatrix(ldl.transpose()), id)));
  }
  const CMatrix s = gen.exp();
  return ptm_from_liouville(LiouvilleSuperoperator(n, s));
}

GateError random_lindblad_error(const PauliTransferMatrix& target,
                                const LindbladParameters& params) {
  const auto lambda = random_lindblad_channel(target.qubits(), params);
  PauliTransferMatrix r(target.qubits(), lambda.matrix() * target.matrix());
  return GateError{error_between(r, target), std::move(r)};
}

LindbladParameters calibrate_lindblad(const PauliTransferMatrix& target,
                                      double target_infidelity,
                                      LindbladParameters params, double rel_tol) {
  if (!(target_infidelity > 0.0 && target_infidelity < 0.5))
    throw InvalidArgument("calibrate_lindblad: target infidelity must lie in (0, 0.5)");
  const double h0 = params.hamiltonian_strength;
  const double g0 = params.dissipation_strength;
  if (h0 < 0.0 || g0 < 0.0 || h0 + g0 == 0.0)
    throw InvalidArgument("calibrate_lindblad: need a nonzero strength ratio");
  auto infidelity_at = [&](double scale) {
    LindbladParameters p = params;
    p.hamiltonian_strength = scale * h0;
    p.dissipation_strength = scale * g0;
    return ptm_infidelity(target.matrix(), random_lindblad_error(target, p).channel.matrix());
  };
  double lo = 0.0, hi = 1e-3 / (h0 + g0);
  int guard = 0;
  while (infidelity_at(hi) < target_infidelity) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 200)
      throw ConvergenceError("calibrate_lindblad: cannot reach target infidelity");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double value = infidelity_at(mid);
    if (std::abs(value - target_infidelity) <= rel_tol * target_infidelity) {
      lo = hi = mid;
      break;
    }
    (value < target_infidelity ? lo : hi) = mid;
  }
  params.hamiltonian_strength = 0.5 * (lo + hi) * h0;
  params.dissipation_strength = 0.5 * (lo + hi) * g0;
  return params;
}

std::vector<std::string> FixtureSet::names() {
  return {"sqrtx_target",  "sqrtx_error",   "cnot10_target",
          "cnot10_error",  "cnot01_target", "manila_error"};
}

const Matrix& FixtureSet::get(const std::string& name) const {
  if (name == "sqrtx_target") return sqrtx_target.matrix();
  if (name == "sqrtx_error") return sqrtx_error.matrix();
  if (name == "cnot10_target") return cnot10_target.matrix();
  if (name == "cnot10_error") return cnot10_error.matrix();
  if (name == "cnot01_target") return cnot01_target.matrix();
  if (name == "manila_error") return manila_error.matrix();
  throw InvalidArgument("unknown fixture \"" + name + "\"");
}

const FixtureSet& load_fixtures() {
  static const FixtureSet fixtures = [] {
    std::vector<MatrixFile> files;
    for (int i = 0; i < detail::kFixtureCount; ++i) {
      auto f = parse_matrix_json(detail::kFixtureSources[i].second);
      f.name = std::string(detail::kFixtureSources[i].first);
      files.push_back(std::move(f));
    }
    return assemble(files);
  }();
  return fixtures;
}

FixtureSet load_fixtures(const std::string& directory) {
  std::vector<MatrixFile> files;
  for (const auto& name : FixtureSet::names()) {
    auto f = read_matrix_file(directory + "/" + name + ".json");
    f.name = name;
    files.push_back(std::move(f));
  }
  return assemble(files);
}

FixtureGate fixture_gate(const std::string& gate) {
  const auto& f = load_fixtures();
  if (gate == "sqrtx") return {f.sqrtx_target, f.sqrtx_error};
  if (gate == "cnot10") return {f.cnot10_target, f.cnot10_error};
  if (gate == "cnot01") return {f.cnot01_target, f.manila_error};
  throw InvalidArgument("no fixture for gate \"" + gate + "\"");
}

}  // namespace mqpt
