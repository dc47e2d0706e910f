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

#include "mqpt/mqpt.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>

#include "mqpt/experiments.hpp"
#include "mqpt/matrix_io.hpp"
#include "mqpt/metrics.hpp"
#include "mqpt/tomography.hpp"

struct mqpt_matrix {
  mqpt::MatrixFile file;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
mqpt_status guarded(Fn fn) {
  g_last_error.clear();
  try {
    fn();
    return MQPT_OK;
  } catch (const mqpt::ConfigError& e) {
    g_last_error = e.what();
    return MQPT_ERR_CONFIG;
  } catch (const mqpt::InvalidArgument& e) {
    g_last_error = e.what();
    return MQPT_ERR_INVALID_ARGUMENT;
  } catch (const mqpt::ConvergenceError& e) {
    g_last_error = e.what();
    return MQPT_ERR_CONVERGENCE;
  } catch (const mqpt::IoError& e) {
    g_last_error = e.what();
    return MQPT_ERR_IO;
  } catch (const mqpt::NumericalError& e) {
    g_last_error = e.what();
    return MQPT_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MQPT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MQPT_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw mqpt::InvalidArgument(std::string(what) + " is NULL");
}

const mqpt::MatrixFile& file_of(const mqpt_matrix* m) {
  require(m, "matrix handle");
  return m->file;
}

mqpt_matrix* wrap(mqpt::MatrixFile file) { return new mqpt_matrix{std::move(file)}; }

mqpt::PauliTransferMatrix ptm_of(const mqpt_matrix* m) {
  return mqpt::ptm_from_file(file_of(m));
}

mqpt::NoiseModel noise_of(const mqpt_noise* noise) {
  mqpt::NoiseModel out;
  if (!noise) return out;
  out.spam_infidelity = noise->spam_infidelity;
  out.spam_coherent_fraction = noise->spam_coherent_fraction;
  out.readout_error = noise->readout_error;
  out.mitigate_readout = noise->mitigate_readout != 0;
  out.shots = noise->shots;
  out.seed = noise->seed;
  return out;
}

bool is_error_tag(const std::string& c) { return c == "error"; }

std::string checked_convention(const char* convention) {
  const std::string c = convention ? convention : "ptm";
  if (c != "ptm" && c != "error" && c != "liouville" && c != "choi" && c != "unitary")
    throw mqpt::InvalidArgument("unknown convention \"" + c + "\"");
  return c;
}

}  // namespace

extern "C" {

const char* mqpt_version(void) { return "0.1.0"; }

const char* mqpt_last_error(void) { return g_last_error.c_str(); }

const char* mqpt_status_string(mqpt_status status) {
  switch (status) {
    case MQPT_OK: return "ok";
    case MQPT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MQPT_ERR_CONFIG: return "configuration error";
    case MQPT_ERR_CONVERGENCE: return "no convergence";
    case MQPT_ERR_IO: return "i/o error";
    case MQPT_ERR_NUMERICAL: return "numerical error";
    case MQPT_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void mqpt_noise_init(mqpt_noise* noise) {
  if (noise) *noise = mqpt_noise{0.0, 0.0, 0.0, 0, 0, 0};
}

mqpt_status mqpt_matrix_from_real(int rows, const double* data, const char* convention,
                                  mqpt_matrix** out) {
  return guarded([&] {
    require(data, "data");
    require(out, "out");
    if (rows < 1) throw mqpt::InvalidArgument("rows must be >= 1");
    const mqpt::Matrix m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                          Eigen::RowMajor>>(data, rows, rows);
    mqpt::MatrixFile f;
    f.convention = checked_convention(convention);
    f.matrix = m.cast<mqpt::Complex>();
    f.n = f.convention == "unitary" ? mqpt::qubits_for_dimension(rows)
                                    : mqpt::qubits_for_superdimension(rows);
    *out = wrap(std::move(f));
  });
}

mqpt_status mqpt_matrix_from_complex(int rows, const double* re, const double* im,
                                     const char* convention, mqpt_matrix** out) {
  return guarded([&] {
    require(re, "re");
    require(im, "im");
    require(out, "out");
    if (rows < 1) throw mqpt::InvalidArgument("rows must be >= 1");
    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    const mqpt::Matrix r = Eigen::Map<const RowMajor>(re, rows, rows);
    const mqpt::Matrix i = Eigen::Map<const RowMajor>(im, rows, rows);
    mqpt::MatrixFile f;
    f.convention = checked_convention(convention);
    f.matrix = r.cast<mqpt::Complex>() + mqpt::Complex(0.0, 1.0) * i.cast<mqpt::Complex>();
    f.n = f.convention == "unitary" ? mqpt::qubits_for_dimension(rows)
                                    : mqpt::qubits_for_superdimension(rows);
    *out = wrap(std::move(f));
  });
}

mqpt_status mqpt_matrix_load(const char* path, mqpt_matrix** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(mqpt::read_matrix_file(path));
  });
}

mqpt_status mqpt_matrix_save(const mqpt_matrix* m, const char* path) {
  return guarded([&] {
    require(path, "path");
    mqpt::write_matrix_file(path, file_of(m));
  });
}

mqpt_status mqpt_matrix_to_json(const mqpt_matrix* m, char** out) {
  return guarded([&] {
    require(out, "out");
    const std::string text = mqpt::matrix_to_json(file_of(m));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (!buf) throw std::bad_alloc();
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void mqpt_string_free(char* s) { std::free(s); }

void mqpt_matrix_free(mqpt_matrix* m) { delete m; }

mqpt_status mqpt_matrix_rows(const mqpt_matrix* m, int* rows) {
  return guarded([&] {
    require(rows, "rows");
    *rows = static_cast<int>(file_of(m).matrix.rows());
  });
}

mqpt_status mqpt_matrix_qubits(const mqpt_matrix* m, int* n) {
  return guarded([&] {
    require(n, "n");
    *n = file_of(m).n;
  });
}

mqpt_status mqpt_matrix_convention(const mqpt_matrix* m, char* buf, size_t len) {
  return guarded([&] {
    require(buf, "buf");
    if (len == 0) throw mqpt::InvalidArgument("buffer length is 0");
    const auto& c = file_of(m).convention;
    const size_t k = std::min(len - 1, c.size());
    std::memcpy(buf, c.data(), k);
    buf[k] = '\0';
  });
}

mqpt_status mqpt_matrix_get(const mqpt_matrix* m, int i, int j, double* re, double* im) {
  return guarded([&] {
    const auto& mat = file_of(m).matrix;
    if (i < 0 || j < 0 || i >= mat.rows() || j >= mat.cols())
      throw mqpt::InvalidArgument("index out of range");
    if (re) *re = mat(i, j).real();
    if (im) *im = mat(i, j).imag();
  });
}

mqpt_status mqpt_matrix_copy_real(const mqpt_matrix* m, double* out, size_t len) {
  return guarded([&] {
    require(out, "out");
    const mqpt::Matrix r = mqpt::real_matrix(file_of(m));
    if (len < static_cast<size_t>(r.size())) throw mqpt::InvalidArgument("output buffer too small");
    for (mqpt::Index i = 0; i < r.rows(); ++i)
      for (mqpt::Index j = 0; j < r.cols(); ++j) out[i * r.cols() + j] = r(i, j);
  });
}

mqpt_status mqpt_fixture(const char* name, mqpt_matrix** out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    const std::string n(name);
    const auto& m = mqpt::load_fixtures().get(n);
    const bool is_error = n.size() > 6 && n.compare(n.size() - 6, 6, "_error") == 0;
    *out = wrap(mqpt::MatrixFile{n, mqpt::qubits_for_superdimension(m.rows()),
                                 is_error ? "error" : "ptm", m.cast<mqpt::Complex>()});
  });
}

mqpt_status mqpt_target(const char* gate, mqpt_matrix** out) {
  return guarded([&] {
    require(gate, "gate");
    require(out, "out");
    const std::string g(gate);
    mqpt::CMatrix u;
    if (g == "sqrtx")
      u = mqpt::sqrt_x_unitary();
    else if (g == "cnot10")
      u = mqpt::cnot10_unitary();
    else if (g == "cnot01")
      u = mqpt::cnot01_unitary();
    else
      throw mqpt::InvalidArgument("unknown gate \"" + g + "\"");
    *out = wrap(mqpt::to_file(mqpt::target_ptm(u), g));
  });
}

mqpt_status mqpt_to_ptm(const mqpt_matrix* m, mqpt_matrix** out) {
  return guarded([&] {
    require(out, "out");
    auto f = mqpt::to_file(ptm_of(m), file_of(m).name);
    if (is_error_tag(file_of(m).convention)) f.convention = "error";
    *out = wrap(std::move(f));
  });
}

mqpt_status mqpt_to_liouville(const mqpt_matrix* m, mqpt_matrix** out) {
  return guarded([&] {
    require(out, "out");
    const auto s = mqpt::liouville_from_ptm(ptm_of(m));
    *out = wrap(mqpt::MatrixFile{file_of(m).name, s.qubits(), "liouville", s.matrix()});
  });
}

mqpt_status mqpt_to_choi(const mqpt_matrix* m, mqpt_matrix** out) {
  return guarded([&] {
    require(out, "out");
    const auto c = mqpt::choi_from_ptm(ptm_of(m));
    *out = wrap(mqpt::MatrixFile{file_of(m).name, c.qubits(), "choi", c.matrix()});
  });
}

mqpt_status mqpt_combine(const mqpt_matrix* a, const mqpt_matrix* b, double sign,
                         mqpt_matrix** out) {
  return guarded([&] {
    require(out, "out");
    const auto pa = ptm_of(a);
    const auto pb = ptm_of(b);
    if (pa.superdim() != pb.superdim()) throw mqpt::InvalidArgument("dimension mismatch");
    const bool channel = !is_error_tag(file_of(a).convention) &&
                         is_error_tag(file_of(b).convention) && sign > 0.0;
    const mqpt::Matrix sum = pa.matrix() + sign * pb.matrix();
    *out = wrap(mqpt::MatrixFile{{}, pa.qubits(), channel ? "ptm" : "error",
                                 sum.cast<mqpt::Complex>()});
  });
}

mqpt_status mqpt_channel_power(const mqpt_matrix* r, int power, mqpt_matrix** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(mqpt::to_file(mqpt::channel_power(ptm_of(r), power)));
  });
}

mqpt_status mqpt_is_cptp(const mqpt_matrix* r, double tol, int* cptp, double* min_eigenvalue,
                         double* trace_residual) {
  return guarded([&] {
    const auto rep = mqpt::is_cptp(mqpt::choi_from_ptm(ptm_of(r)), tol);
    if (cptp) *cptp = rep.cptp ? 1 : 0;
    if (min_eigenvalue) *min_eigenvalue = rep.min_eigenvalue;
    if (trace_residual) *trace_residual = rep.trace_residual;
  });
}

mqpt_status mqpt_simulate_tomography(const mqpt_matrix* r, int passes, const mqpt_noise* noise,
                                     mqpt_matrix** ptm_out) {
  return guarded([&] {
    require(ptm_out, "ptm_out");
    const auto res = mqpt::run_tomography(ptm_of(r), passes, noise_of(noise));
    *ptm_out = wrap(mqpt::to_file(res.ptm));
  });
}

mqpt_status mqpt_simulate_counts(const mqpt_matrix* r, int passes, const mqpt_noise* noise,
                                 const char* path) {
  return guarded([&] {
    require(path, "path");
    const auto table = mqpt::simulate_counts(ptm_of(r), passes, noise_of(noise));
    std::ofstream out(path);
    if (!out) throw mqpt::IoError(std::string("cannot write ") + path);
    out << mqpt::counts_to_json(table) << '\n';
    if (!out) throw mqpt::IoError(std::string("write failed: ") + path);
  });
}

mqpt_status mqpt_recover(const mqpt_matrix* target, const mqpt_matrix* multipass, int passes,
                         const char* method, mqpt_matrix** error_out, mqpt_recovery_info* info) {
  return guarded([&] {
    require(method, "method");
    require(error_out, "error_out");
    const auto res =
        mqpt::recover(mqpt::parse_method(method), ptm_of(target), ptm_of(multipass), passes);
    *error_out = wrap(mqpt::to_file(res.error));
    if (info) *info = mqpt_recovery_info{res.iterations, res.residual, res.converged ? 1 : 0,
                                         res.diverged ? 1 : 0};
  });
}

mqpt_status mqpt_compute_metrics(const mqpt_matrix* t, const mqpt_matrix* r, double tol,
                                 mqpt_metrics* out) {
  return guarded([&] {
    require(out, "out");
    const auto pt = ptm_of(t);
    const auto pr = ptm_of(r);
    if (pt.superdim() != pr.superdim()) throw mqpt::InvalidArgument("dimension mismatch");
    const auto rep = mqpt::evaluate_metrics(pt, pr, std::nullopt, tol);
    *out = mqpt_metrics{rep.fidelity, rep.infidelity, rep.diamond_norm, rep.diamond_solver_gap,
                        mqpt::diamond_bound_check(rep.infidelity, rep.diamond_norm, pt.dim()) ? 1
                                                                                               : 0};
  });
}

mqpt_status mqpt_diamond_norm(const mqpt_matrix* e, double tol, double* value, double* gap) {
  return guarded([&] {
    require(value, "value");
    mqpt::DiamondSettings s;
    s.tolerance = tol;
    const auto res = mqpt::solve_diamond_norm(ptm_of(e).matrix(), s);
    if (!res.converged)
      throw mqpt::ConvergenceError("diamond norm gap " + std::to_string(res.gap) + " not closed");
    *value = res.value;
    if (gap) *gap = res.gap;
  });
}

mqpt_status mqpt_populations(const mqpt_matrix* r, int max_m, double* out, size_t len) {
  return guarded([&] {
    require(out, "out");
    if (max_m < 0) throw mqpt::InvalidArgument("max_m must be >= 0");
    if (len < 4 * (static_cast<size_t>(max_m) + 1))
      throw mqpt::InvalidArgument("output buffer too small");
    const auto series = mqpt::population_series(mqpt::liouville_from_ptm(ptm_of(r)), max_m);
    for (size_t m = 0; m < series.size(); ++m)
      for (size_t k = 0; k < 4; ++k) out[4 * m + k] = series[m].p[k];
  });
}

mqpt_status mqpt_run_config(const char* config_path, const uint64_t* seed, const char* out_dir,
                            mqpt_run_summary* summary) {
  return guarded([&] {
    require(config_path, "config_path");
    auto config = mqpt::load_config(config_path);
    if (seed) config.seed = *seed;
    if (out_dir) config.output_dir = out_dir;
    mqpt_run_summary s{0, 0};
    if (config.mode == "populations") {
      const auto study = mqpt::run_population_study(config);
      std::error_code ec;
      std::filesystem::create_directories(config.output_dir, ec);
      if (ec) throw mqpt::IoError("cannot create " + config.output_dir + ": " + ec.message());
      const auto path = std::filesystem::path(config.output_dir) / "populations.csv";
      std::ofstream out(path, std::ios::binary);
      out << mqpt::population_csv(study);
      if (!out) throw mqpt::IoError("write failed: " + path.string());
      s.records = study.direct.size();
    } else {
      const auto result = mqpt::run_batch(config);
      mqpt::emit(result, config.output_dir);
      s.records = result.records.size();
      for (const auto& r : result.records)
        if (!r.converged) ++s.unconverged;
    }
    if (summary) *summary = s;
  });
}

}  // extern "C"
