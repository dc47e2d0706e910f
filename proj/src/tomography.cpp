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

#include "mqpt/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <random>

#include <Eigen/QR>
#include <json.hpp>

namespace mqpt {

namespace {

Vector prep_vector(Prep p) {
  Vector v(4);
  switch (p) {
    case Prep::z0: v << 1, 0, 0, 1; break;
    case Prep::z1: v << 1, 0, 0, -1; break;
    case Prep::x_plus: v << 1, 1, 0, 0; break;
    case Prep::y_plus: v << 1, 0, 1, 0; break;
  }
  return v;
}

/// Half the Pauli vector of the projector onto outcome bit `o` of basis b.
Vector effect_vector(Basis b, int o) {
  Vector m = Vector::Zero(4);
  m(0) = 1.0;
  const double sign = o == 0 ? 1.0 : -1.0;
  m(b == Basis::x ? 1 : b == Basis::y ? 2 : 3) = sign;
  return 0.5 * m;
}

bool prep_uses_gate(Prep p) { return p == Prep::x_plus || p == Prep::y_plus; }
bool basis_uses_gate(Basis b) { return b != Basis::z; }

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

/// Pauli vectors of the ideal input state of a circuit.
Vector ideal_state(const TomographyCircuit& c) {
  Vector x = Vector::Ones(1);
  for (Prep p : c.preps) x = kron_vec(x, prep_vector(p));
  return x;
}

/// Pauli vector of the ideal effect for outcome b, divided by d.
Vector ideal_effect(const TomographyCircuit& c, Index outcome) {
  const int n = c.qubits();
  Vector m = Vector::Ones(1);
  for (int q = 0; q < n; ++q) {
    const int bit = static_cast<int>((outcome >> (n - 1 - q)) & 1);
    m = kron_vec(m, effect_vector(c.bases[static_cast<std::size_t>(q)], bit));
  }
  return m;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Design matrix rows are kron(m, x) for every (circuit, outcome): the
/// probability is m^T R x with m the effect's Pauli vector (including the
/// 1/d of the trace inner product) and x the state's. Unknowns are PTM
/// entries in row-major order, a real-linear bijection of the Hermitian
/// Choi parameters.
class LinearInversion {
 public:
  explicit LinearInversion(int n) {
    const auto circuits = generate_circuits(n, 1);
    const Index d = Index{1} << n;
    const Index dd = d * d;
    Matrix a(static_cast<Index>(circuits.size()) * d, dd * dd);
    Index row = 0;
    for (const auto& c : circuits) {
      const Vector x = ideal_state(c);
      for (Index b = 0; b < d; ++b)
        a.row(row++) = kron_vec(ideal_effect(c, b), x).transpose();
    }
    design_ = a;
    qr_.compute(a);
    if (qr_.rank() != dd * dd)
      throw NumericalError("tomography design matrix is rank deficient");
  }

  const Matrix& design() const { return design_; }
  Vector solve(const Vector& f) const { return qr_.solve(f); }

 private:
  Matrix design_;
  Eigen::ColPivHouseholderQR<Matrix> qr_;
};

const LinearInversion& linear_inversion(int n) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const LinearInversion>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const LinearInversion>(n);
  return *slot;
}

const char* prep_name(Prep p) {
  switch (p) {
    case Prep::z0: return "Z0";
    case Prep::z1: return "Z1";
    case Prep::x_plus: return "X+";
    case Prep::y_plus: return "Y+";
  }
  return "?";
}

char basis_name(Basis b) { return b == Basis::x ? 'X' : b == Basis::y ? 'Y' : 'Z'; }

}  // namespace

std::string TomographyCircuit::label() const {
  std::string out;
  for (std::size_t q = 0; q < preps.size(); ++q) {
    if (q) out += '.';
    out += prep_name(preps[q]);
  }
  out += '|';
  for (std::size_t q = 0; q < bases.size(); ++q) {
    if (q) out += '.';
    out += basis_name(bases[q]);
  }
  return out;
}

std::vector<TomographyCircuit> generate_circuits(int n, int passes) {
  if (n < 1) throw InvalidArgument("generate_circuits: n must be >= 1");
  if (passes < 1) throw InvalidArgument("generate_circuits: passes must be >= 1");
  int preps = 1, bases = 1;
  for (int q = 0; q < n; ++q) preps *= 4, bases *= 3;
  std::vector<TomographyCircuit> out;
  out.reserve(static_cast<std::size_t>(preps * bases));
  for (int p = 0; p < preps; ++p)
    for (int b = 0; b < bases; ++b) {
      TomographyCircuit c;
      c.passes = passes;
      c.preps.resize(static_cast<std::size_t>(n));
      c.bases.resize(static_cast<std::size_t>(n));
      int pp = p, bb = b;
      for (int q = n - 1; q >= 0; --q) {
        c.preps[static_cast<std::size_t>(q)] = static_cast<Prep>(pp % 4);
        c.bases[static_cast<std::size_t>(q)] = static_cast<Basis>(bb % 3);
        pp /= 4;
        bb /= 3;
      }
      out.push_back(std::move(c));
    }
  return out;
}

Vector multipass_probabilities(const TomographyCircuit& circuit, const Matrix& r_n,
                               const NoiseModel& noise) {
  const int n = circuit.qubits();
  const Index d = Index{1} << n;
  if (r_n.rows() != d * d) throw InvalidArgument("exact_probabilities: dimension mismatch");
  const Matrix spam =
      spam_error_channel(noise.spam_infidelity, noise.spam_coherent_fraction).matrix();

  Vector x = Vector::Ones(1);
  for (Prep p : circuit.preps) {
    Vector v = prep_vector(p);
    if (prep_uses_gate(p)) v = spam * v;
    x = kron_vec(x, v);
  }
  const Vector y = r_n * x;

  Vector probs(d);
  for (Index b = 0; b < d; ++b) {
    Vector m = Vector::Ones(1);
    for (int q = 0; q < n; ++q) {
      const Basis basis = circuit.bases[static_cast<std::size_t>(q)];
      const int bit = static_cast<int>((b >> (n - 1 - q)) & 1);
      Vector e = effect_vector(basis, bit);
      // The basis-change gate acts before the projector: Tr[M S(rho)].
      if (basis_uses_gate(basis)) e = spam.transpose() * e;
      m = kron_vec(m, e);
    }
    probs(b) = m.dot(y);
  }
  return noise.confusion(n) * probs;
}

Vector exact_probabilities(const TomographyCircuit& circuit,
                           const PauliTransferMatrix& r, const NoiseModel& noise) {
  return multipass_probabilities(circuit, matrix_power(r.matrix(), circuit.passes), noise);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

std::vector<std::int64_t> sample_counts(const Vector& probabilities,
                                        std::int64_t shots, std::uint64_t seed) {
  if (shots < 0) throw InvalidArgument("sample_counts: shots must be >= 0");
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> out(static_cast<std::size_t>(probabilities.size()), 0);
  std::int64_t remaining = shots;
  double mass = 1.0;
  for (Index k = 0; k < probabilities.size(); ++k) {
    if (remaining == 0) break;
    if (k + 1 == probabilities.size()) {
      out[static_cast<std::size_t>(k)] = remaining;
      break;
    }
    const double p = std::clamp(probabilities(k), 0.0, 1.0);
    const double q = mass > 0.0 ? std::clamp(p / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::int64_t> draw(remaining, q);
    const std::int64_t c = draw(rng);
    out[static_cast<std::size_t>(k)] = c;
    remaining -= c;
    mass -= p;
  }
  return out;
}

Vector CountsTable::frequencies(std::size_t i) const {
  return shots > 0 ? Vector(counts[i] / static_cast<double>(shots)) : counts[i];
}

CountsTable mitigate_readout(const CountsTable& table, const Matrix& confusion) {
  Eigen::FullPivLU<Matrix> lu(confusion);
  if (!lu.isInvertible()) throw NumericalError("mitigate_readout: singular confusion matrix");
  const Matrix inv = lu.inverse();
  CountsTable out = table;
  for (auto& row : out.counts) {
    if (row.size() != inv.rows())
      throw InvalidArgument("mitigate_readout: confusion size mismatch");
    row = inv * row;
  }
  return out;
}

ReconstructionResult reconstruct(const CountsTable& table,
                                 const ReconstructionOptions& options) {
  if (table.circuits.empty()) throw InvalidArgument("reconstruct: no circuits");
  const int n = table.circuits.front().qubits();
  const Index d = Index{1} << n;
  const auto expected = generate_circuits(n, 1);
  if (table.circuits.size() != expected.size() || table.counts.size() != expected.size())
    throw NumericalError("reconstruct: incomplete circuit set");
  Vector f(static_cast<Index>(expected.size()) * d);
  for (std::size_t i = 0; i < expected.size(); ++i) {
    const auto& c = table.circuits[i];
    if (c.preps != expected[i].preps || c.bases != expected[i].bases)
      throw NumericalError("reconstruct: circuit set out of order or incomplete");
    if (table.counts[i].size() != d) throw InvalidArgument("reconstruct: bad count vector");
    f.segment(static_cast<Index>(i) * d, d) = table.frequencies(i);
  }
  const auto& inversion = linear_inversion(n);
  const Vector sol = inversion.solve(f);
  const double residual = (inversion.design() * sol - f).norm();
  const Index dd = d * d;
  Matrix r(dd, dd);
  for (Index i = 0; i < dd; ++i) r.row(i) = sol.segment(i * dd, dd).transpose();

  ChoiMatrix choi = choi_from_ptm(r);
  if (options.project_psd) {
    const CMatrix herm = 0.5 * (choi.matrix() + choi.matrix().adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm);
    const Vector clipped = eig.eigenvalues().cwiseMax(0.0);
    choi = ChoiMatrix(n, eig.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
                             eig.eigenvectors().adjoint());
    r = ptm_matrix_from_choi(choi.matrix());
  }
  return ReconstructionResult{std::move(choi), PauliTransferMatrix(n, r), residual};
}

CountsTable simulate_counts(const PauliTransferMatrix& r, int passes,
                            const NoiseModel& noise) {
  noise.validate(r.qubits());
  CountsTable table;
  table.circuits = generate_circuits(r.qubits(), passes);
  table.shots = noise.shots;
  const Matrix r_n = matrix_power(r.matrix(), passes);
  table.counts.reserve(table.circuits.size());
  for (std::size_t i = 0; i < table.circuits.size(); ++i) {
    const Vector p = multipass_probabilities(table.circuits[i], r_n, noise);
    if (noise.shots == 0) {
      table.counts.push_back(p);
      continue;
    }
    const auto c = sample_counts(p, noise.shots, derive_seed(noise.seed, i));
    Vector row(p.size());
    for (Index k = 0; k < p.size(); ++k)
      row(k) = static_cast<double>(c[static_cast<std::size_t>(k)]);
    table.counts.push_back(std::move(row));
  }
  return table;
}

ReconstructionResult run_tomography(const PauliTransferMatrix& r, int passes,
                                    const NoiseModel& noise,
                                    const ReconstructionOptions& options) {
  CountsTable table = simulate_counts(r, passes, noise);
  if (noise.mitigate_readout) table = mitigate_readout(table, noise.confusion(r.qubits()));
  return reconstruct(table, options);
}

std::string counts_to_json(const CountsTable& table) {
  nlohmann::json counts = nlohmann::json::object();
  for (std::size_t i = 0; i < table.circuits.size(); ++i)
    counts[table.circuits[i].label()] =
        std::vector<double>(table.counts[i].data(),
                            table.counts[i].data() + table.counts[i].size());
  nlohmann::json doc;
  doc["qubits"] = table.circuits.empty() ? 0 : table.circuits.front().qubits();
  doc["passes"] = table.circuits.empty() ? 0 : table.circuits.front().passes;
  doc["shots"] = table.shots;
  doc["counts"] = std::move(counts);
  return doc.dump(1);
}

CountsTable counts_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
    CountsTable table;
    table.shots = doc.at("shots").get<std::int64_t>();
    table.circuits = generate_circuits(doc.at("qubits").get<int>(), doc.at("passes").get<int>());
    const auto& counts = doc.at("counts");
    for (const auto& c : table.circuits) {
      const auto v = counts.at(c.label()).get<std::vector<double>>();
      table.counts.push_back(Eigen::Map<const Vector>(v.data(), static_cast<Index>(v.size())));
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("counts file: ") + e.what());
  }
}

}  // namespace mqpt
