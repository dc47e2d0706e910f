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

#include "mqpt/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "mqpt/matrix_io.hpp"
#include "mqpt/metrics.hpp"
#include "mqpt/tomography.hpp"

namespace mqpt {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty())
    throw ConfigError("config: " + key + " expects a number, got \"" + v + "\"");
  return out;
}

long long to_integer(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) {
    // Accept integral values in scientific notation such as 1e5.
    const double d = to_double(key, v);
    if (d != std::floor(d) || std::abs(d) > 9e18)
      throw ConfigError("config: " + key + " expects an integer, got \"" + v + "\"");
    return static_cast<long long>(d);
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("config: " + key + " expects true or false, got \"" + v + "\"");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows) {
  const auto r = static_cast<Index>(rows.size());
  Matrix m(r, r);
  for (Index i = 0; i < r; ++i) {
    const auto& row = rows.at(static_cast<std::size_t>(i));
    if (static_cast<Index>(row.size()) != r) throw IoError("record: error matrix is not square");
    for (Index j = 0; j < r; ++j) m(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
  }
  return m;
}

json beta_json(const BetaFit& f) { return {{"a", f.a}, {"b", f.b}, {"scale", f.scale}}; }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Runs fn(i) for i in [0, count) on `threads` workers. Results must be
/// written by index; the first exception is rethrown.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double error_infidelity(const Matrix& t, const Matrix& e) {
  return -(t.transpose() * e).trace() / static_cast<double>(t.rows());
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::stringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string v = trim(line.substr(eq + 1));
    if (key == "gate") {
      c.gate = v;
    } else if (key == "target_file") {
      c.target_file = v;
    } else if (key == "error_file") {
      c.error_file = v;
    } else if (key == "error_source") {
      c.error_source = v;
    } else if (key == "passes") {
      c.passes.clear();
      for (const auto& s : split_list(v)) c.passes.push_back(static_cast<int>(to_integer(key, s)));
    } else if (key == "shots") {
      c.shots.clear();
      for (const auto& s : split_list(v)) c.shots.push_back(to_integer(key, s));
    } else if (key == "repetitions") {
      c.repetitions = static_cast<int>(to_integer(key, v));
    } else if (key == "methods") {
      c.methods.clear();
      try {
        for (const auto& s : split_list(v)) c.methods.push_back(parse_method(s));
      } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    } else if (key == "spam_infidelity") {
      c.noise.spam_infidelity = to_double(key, v);
    } else if (key == "spam_coherent_fraction") {
      c.noise.spam_coherent_fraction = to_double(key, v);
    } else if (key == "readout_error") {
      c.noise.readout_error = to_double(key, v);
    } else if (key == "mitigate_readout") {
      c.noise.mitigate_readout = to_bool(key, v);
    } else if (key == "project_psd") {
      c.project_psd = to_bool(key, v);
    } else if (key == "seed") {
      c.seed = static_cast<std::uint64_t>(to_integer(key, v));
    } else if (key == "output_dir") {
      c.output_dir = v;
    } else if (key == "random_seed") {
      c.random_error.seed = static_cast<std::uint64_t>(to_integer(key, v));
    } else if (key == "hamiltonian_strength") {
      c.random_error.hamiltonian_strength = to_double(key, v);
    } else if (key == "dissipation_strength") {
      c.random_error.dissipation_strength = to_double(key, v);
    } else if (key == "collapse_operators") {
      c.random_error.collapse_operators = static_cast<int>(to_integer(key, v));
    } else if (key == "target_infidelity") {
      c.target_infidelity = to_double(key, v);
    } else if (key == "diamond_tolerance") {
      c.diamond_tolerance = to_double(key, v);
    } else if (key == "threads") {
      c.threads = static_cast<int>(to_integer(key, v));
    } else if (key == "mode") {
      c.mode = v;
    } else if (key == "populations_max_m") {
      c.populations_max_m = static_cast<int>(to_integer(key, v));
    } else {
      throw ConfigError("config line " + std::to_string(number) + ": unknown key \"" + key +
                        "\"");
    }
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

FixtureGate resolve_gate(const ExperimentConfig& config) {
  PauliTransferMatrix target;
  std::optional<ErrorMatrix> fixture_error;
  try {
    if (config.gate == "custom") {
      if (config.target_file.empty())
        throw ConfigError("config: gate = custom needs target_file");
      target = ptm_from_file(read_matrix_file(config.target_file));
      if (!config.error_file.empty()) {
        const auto f = read_matrix_file(config.error_file);
        fixture_error = ErrorMatrix(f.n, real_matrix(f));
      }
    } else {
      auto g = fixture_gate(config.gate);
      target = g.target;
      fixture_error = g.error;
      if (!config.error_file.empty()) {
        const auto f = read_matrix_file(config.error_file);
        fixture_error = ErrorMatrix(f.n, real_matrix(f));
      }
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const IoError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  if (config.error_source == "fixture") {
    if (!fixture_error) throw ConfigError("config: fixture error source needs error_file");
    if (fixture_error->superdim() != target.superdim())
      throw ConfigError("config: error and target dimensions differ");
    return FixtureGate{target, *fixture_error};
  }
  if (config.error_source == "random") {
    LindbladParameters params = config.random_error;
    try {
      if (config.target_infidelity)
        params = calibrate_lindblad(target, *config.target_infidelity, params);
      return FixtureGate{target, random_lindblad_error(target, params).error};
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
  throw ConfigError("config: unknown error_source \"" + config.error_source + "\"");
}

void validate_config(const ExperimentConfig& c, const PauliTransferMatrix& target) {
  if (c.repetitions < 1) throw ConfigError("config: repetitions must be >= 1");
  if (c.passes.empty() || c.shots.empty() || c.methods.empty())
    throw ConfigError("config: passes, shots and methods must be non-empty");
  if (c.threads < 1) throw ConfigError("config: threads must be >= 1");
  if (!(c.diamond_tolerance > 0.0)) throw ConfigError("config: diamond_tolerance must be > 0");
  try {
    c.noise.validate(target.qubits());
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (auto s : c.shots)
    if (s < 0) throw ConfigError("config: shots must be >= 0");
  const bool involutary =
      (target.matrix() * target.matrix() - Matrix::Identity(target.superdim(), target.superdim()))
          .cwiseAbs()
          .maxCoeff() < 1e-10;
  for (int n : c.passes) {
    if (n < 1) throw ConfigError("config: passes must be >= 1");
    for (Method m : c.methods) {
      if (m == Method::iterative && !valid_pass_count(target, n))
        throw ConfigError("config: N=" + std::to_string(n) +
                          " is not 1 mod the target order (iterative method)");
      if (m == Method::sylvester && (!involutary || n % 2 == 0))
        throw ConfigError("config: sylvester method needs an involutary target and odd N");
    }
  }
  if (c.mode != "batch" && c.mode != "populations")
    throw ConfigError("config: unknown mode \"" + c.mode + "\"");
  if (c.mode == "populations" && (target.qubits() != 2 || c.populations_max_m < 0))
    throw ConfigError("config: populations mode needs a two-qubit gate and max M >= 0");
}

std::uint64_t repetition_seed(std::uint64_t base, std::size_t grid, int rep) {
  return derive_seed(derive_seed(base, grid), static_cast<std::uint64_t>(rep));
}

double median(std::vector<double> values) {
  if (values.empty()) throw InvalidArgument("median: no values");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

BetaFit fit_beta(const std::vector<double>& samples) {
  if (samples.size() < 4) throw InvalidArgument("fit_beta: need at least 4 samples");
  double max = 0.0;
  for (double s : samples) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("fit_beta: samples must be positive");
    max = std::max(max, s);
  }
  BetaFit fit;
  fit.scale = 1.05 * max;
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double s : samples) mean += s / fit.scale;
  mean /= n;
  double var = 0.0;
  for (double s : samples) var += (s / fit.scale - mean) * (s / fit.scale - mean);
  var /= n;
  if (!(var > 1e-300 * mean)) throw NumericalError("fit_beta: samples have zero variance");
  const double common = mean * (1.0 - mean) / var - 1.0;
  if (!(common > 0.0)) throw NumericalError("fit_beta: variance too large for a beta fit");
  fit.a = mean * common;
  fit.b = (1.0 - mean) * common;
  return fit;
}

BatchResult run_batch(const ExperimentConfig& config) {
  const auto gate = resolve_gate(config);
  const auto& t = gate.target;
  validate_config(config, t);
  const PauliTransferMatrix r = channel_with_error(t, gate.error);

  struct Task {
    std::size_t grid;
    int passes;
    std::int64_t shots;
    int rep;
  };
  std::vector<Task> tasks;
  std::size_t grid = 0;
  for (int n : config.passes)
    for (auto ns : config.shots) {
      for (int rep = 0; rep < config.repetitions; ++rep) tasks.push_back({grid, n, ns, rep});
      ++grid;
    }

  std::vector<std::vector<TomographyRecord>> slots(tasks.size());
  ReconstructionOptions options;
  options.project_psd = config.project_psd;
  parallel_for(tasks.size(), config.threads, [&](std::size_t i) {
    const Task& task = tasks[i];
    NoiseModel noise = config.noise;
    noise.shots = task.shots;
    noise.seed = repetition_seed(config.seed, task.grid, task.rep);
    const auto recon = run_tomography(r, task.passes, noise, options);
    for (Method m : config.methods) {
      const auto res = recover(m, t, recon.ptm, task.passes);
      TomographyRecord rec;
      rec.gate = config.gate;
      rec.method = method_name(m);
      rec.passes = task.passes;
      rec.shots = task.shots;
      rec.repetition = task.rep;
      rec.seed = noise.seed;
      rec.error = res.error.matrix();
      rec.infidelity = error_infidelity(t.matrix(), rec.error);
      rec.diamond = diamond_norm(rec.error, config.diamond_tolerance);
      rec.differential_diamond =
          diamond_norm(rec.error - gate.error.matrix(), config.diamond_tolerance);
      rec.iterations = res.iterations;
      rec.residual = res.residual;
      rec.converged = res.converged;
      slots[i].push_back(std::move(rec));
    }
  });

  BatchResult out;
  for (auto& s : slots)
    for (auto& rec : s) out.records.push_back(std::move(rec));
  out.groups = summarize(out.records);
  return out;
}

std::vector<GroupSummary> summarize(const std::vector<TomographyRecord>& records) {
  std::vector<GroupSummary> groups;
  std::vector<std::vector<const TomographyRecord*>> members;
  for (const auto& rec : records) {
    std::size_t k = 0;
    for (; k < groups.size(); ++k)
      if (groups[k].method == rec.method && groups[k].passes == rec.passes &&
          groups[k].shots == rec.shots)
        break;
    if (k == groups.size()) {
      GroupSummary g;
      g.method = rec.method;
      g.passes = rec.passes;
      g.shots = rec.shots;
      groups.push_back(std::move(g));
      members.emplace_back();
    }
    members[k].push_back(&rec);
  }
  for (std::size_t k = 0; k < groups.size(); ++k) {
    auto& g = groups[k];
    g.count = static_cast<int>(members[k].size());
    g.mean_error = Matrix::Zero(members[k].front()->error.rows(), members[k].front()->error.cols());
    std::vector<double> diamonds, diffs;
    for (const auto* rec : members[k]) {
      g.mean_error += rec->error;
      diamonds.push_back(rec->diamond);
      if (rec->differential_diamond) diffs.push_back(*rec->differential_diamond);
    }
    g.mean_error /= static_cast<double>(g.count);
    g.median_diamond = median(diamonds);
    if (!diffs.empty() && diffs.size() == members[k].size()) {
      g.median_differential = median(diffs);
      try {
        g.differential_fit = fit_beta(diffs);
      } catch (const std::exception&) {
        g.differential_fit.reset();
      }
    }
  }
  return groups;
}

std::string summary_csv(const std::vector<TomographyRecord>& records) {
  std::string out =
      "gate,method,N,n_s,rep,e_F,diamond,diff_diamond,seed,iterations,residual,converged\n";
  for (const auto& r : records) {
    out += r.gate + ',' + r.method + ',' + std::to_string(r.passes) + ',' +
           std::to_string(r.shots) + ',' + std::to_string(r.repetition) + ',' +
           fmt(r.infidelity) + ',' + fmt(r.diamond) + ',' +
           (r.differential_diamond ? fmt(*r.differential_diamond) : std::string()) + ',' +
           std::to_string(r.seed) + ',' + std::to_string(r.iterations) + ',' + fmt(r.residual) +
           ',' + (r.converged ? "1" : "0") + '\n';
  }
  return out;
}

std::string record_to_json(const TomographyRecord& r) {
  json doc;
  doc["gate"] = r.gate;
  doc["method"] = r.method;
  doc["passes"] = r.passes;
  doc["shots"] = r.shots;
  doc["repetition"] = r.repetition;
  doc["seed"] = r.seed;
  doc["infidelity"] = r.infidelity;
  doc["diamond"] = r.diamond;
  doc["differential_diamond"] =
      r.differential_diamond ? json(*r.differential_diamond) : json(nullptr);
  doc["iterations"] = r.iterations;
  doc["residual"] = r.residual;
  doc["converged"] = r.converged;
  doc["error"] = matrix_json(r.error);
  return doc.dump(1);
}

TomographyRecord record_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    TomographyRecord r;
    r.gate = doc.at("gate").get<std::string>();
    r.method = doc.at("method").get<std::string>();
    r.passes = doc.at("passes").get<int>();
    r.shots = doc.at("shots").get<std::int64_t>();
    r.repetition = doc.at("repetition").get<int>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.infidelity = doc.at("infidelity").get<double>();
    r.diamond = doc.at("diamond").get<double>();
    if (!doc.at("differential_diamond").is_null())
      r.differential_diamond = doc.at("differential_diamond").get<double>();
    r.iterations = doc.at("iterations").get<int>();
    r.residual = doc.at("residual").get<double>();
    r.converged = doc.at("converged").get<bool>();
    r.error = matrix_from_json(doc.at("error"));
    return r;
  } catch (const json::exception& e) {
    throw IoError(std::string("record: ") + e.what());
  }
}

void emit(const BatchResult& result, const std::string& directory) {
  if (result.records.empty()) throw InvalidArgument("emit: no records");
  const fs::path dir(directory);
  std::error_code ec;
  fs::create_directories(dir / "records", ec);
  if (ec) throw IoError("cannot create " + (dir / "records").string() + ": " + ec.message());
  write_text(dir / "summary.csv", summary_csv(result.records));
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "rec_%06zu.json", i);
    write_text(dir / "records" / name, record_to_json(result.records[i]) + "\n");
  }
  json groups = json::array();
  for (const auto& g : result.groups) {
    json item;
    item["method"] = g.method;
    item["passes"] = g.passes;
    item["shots"] = g.shots;
    item["count"] = g.count;
    item["median_diamond"] = g.median_diamond;
    item["median_differential_diamond"] =
        g.median_differential ? json(*g.median_differential) : json(nullptr);
    item["differential_beta_fit"] =
        g.differential_fit ? beta_json(*g.differential_fit) : json(nullptr);
    item["mean_error"] = matrix_json(g.mean_error);
    groups.push_back(std::move(item));
  }
  write_text(dir / "groups.json", groups.dump(1) + "\n");
}

std::vector<TomographyRecord> load_records(const std::string& directory) {
  const fs::path dir = fs::path(directory) / "records";
  if (!fs::is_directory(dir)) throw IoError("no records directory in " + directory);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<TomographyRecord> out;
  for (const auto& f : files) out.push_back(record_from_json(read_text(f)));
  return out;
}

std::vector<Populations> population_series(const LiouvilleSuperoperator& s, int max_m) {
  if (s.qubits() != 2) throw InvalidArgument("multipass_populations: needs a two-qubit channel");
  if (max_m < 0) throw InvalidArgument("multipass_populations: M must be >= 0");
  CVector v = CVector::Zero(16);
  v(0) = 1.0;
  std::vector<Populations> out;
  for (int m = 0; m <= max_m; ++m) {
    Populations p;
    const Index idx[4] = {0, 5, 10, 15};
    for (int k = 0; k < 4; ++k) {
      p.p[static_cast<std::size_t>(k)] = v(idx[k]).real();
      p.imaginary_residue = std::max(p.imaginary_residue, std::abs(v(idx[k]).imag()));
    }
    out.push_back(p);
    if (m < max_m) v = s.matrix() * v;
  }
  return out;
}

Populations multipass_populations(const LiouvilleSuperoperator& s, int m) {
  return population_series(s, m).back();
}

PopulationStudy run_population_study(const ExperimentConfig& config) {
  const auto gate = resolve_gate(config);
  const auto& t = gate.target;
  if (t.qubits() != 2) throw ConfigError("config: populations mode needs a two-qubit gate");
  validate_config(config, t);
  const PauliTransferMatrix r = channel_with_error(t, gate.error);
  const int max_m = config.populations_max_m;
  const std::int64_t shots = config.shots.front();
  const auto zero = std::array<double, 4>{};

  PopulationStudy study;
  study.passes = config.passes;
  for (const auto& p : population_series(liouville_from_ptm(r), max_m))
    study.ideal_truth.push_back(p.p);

  study.predicted.assign(config.passes.size(),
                         std::vector<std::array<double, 4>>(static_cast<std::size_t>(max_m) + 1, zero));
  study.direct.assign(static_cast<std::size_t>(max_m) + 1, zero);
  const double inv_reps = 1.0 / config.repetitions;

  for (std::size_t i = 0; i < config.passes.size(); ++i) {
    const int n = config.passes[i];
    for (int rep = 0; rep < config.repetitions; ++rep) {
      NoiseModel noise = config.noise;
      noise.shots = shots;
      noise.seed = repetition_seed(config.seed, i, rep);
      ReconstructionOptions options;
      options.project_psd = config.project_psd;
      const auto recon = run_tomography(r, n, noise, options);
      const auto res = recover(config.methods.front(), t, recon.ptm, n);
      const auto series =
          population_series(liouville_from_ptm(channel_with_error(t, res.error)), max_m);
      for (std::size_t m = 0; m < series.size(); ++m)
        for (std::size_t k = 0; k < 4; ++k) study.predicted[i][m][k] += inv_reps * series[m].p[k];
    }
  }

  // Direct measurement: prepare |00>, apply M passes, read out ZZ.
  TomographyCircuit direct;
  direct.preps = {Prep::z0, Prep::z0};
  direct.bases = {Basis::z, Basis::z};
  Matrix r_m = Matrix::Identity(16, 16);
  for (int m = 0; m <= max_m; ++m) {
    const Vector probs = multipass_probabilities(direct, r_m, config.noise);
    for (int rep = 0; rep < config.repetitions; ++rep) {
      Vector freq = probs;
      if (shots > 0) {
        const auto counts = sample_counts(
            probs, shots, repetition_seed(config.seed, config.passes.size() + 1 + m, rep));
        for (Index k = 0; k < 4; ++k)
          freq(k) = static_cast<double>(counts[static_cast<std::size_t>(k)]) / shots;
      }
      for (std::size_t k = 0; k < 4; ++k)
        study.direct[static_cast<std::size_t>(m)][k] += inv_reps * freq(static_cast<Index>(k));
    }
    r_m = r.matrix() * r_m;
  }
  return study;
}

std::string population_csv(const PopulationStudy& study) {
  std::string out = "M,source,p00,p01,p10,p11\n";
  auto row = [&](std::size_t m, const std::string& source, const std::array<double, 4>& p) {
    out += std::to_string(m) + ',' + source;
    for (double v : p) out += ',' + fmt(v);
    out += '\n';
  };
  for (std::size_t m = 0; m < study.direct.size(); ++m) {
    row(m, "truth", study.ideal_truth[m]);
    row(m, "direct", study.direct[m]);
    for (std::size_t i = 0; i < study.passes.size(); ++i)
      row(m, "predicted_N" + std::to_string(study.passes[i]), study.predicted[i][m]);
  }
  return out;
}

}  // namespace mqpt
