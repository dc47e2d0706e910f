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

// mqpt: command-line front end over the C API.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 solver
// non-convergence, 1 anything else.

#include <cstdint>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mqpt/mqpt.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNoConvergence = 3;

struct MatrixDeleter {
  void operator()(mqpt_matrix* m) const { mqpt_matrix_free(m); }
};
using MatrixPtr = std::unique_ptr<mqpt_matrix, MatrixDeleter>;

class Failure {
 public:
  explicit Failure(mqpt_status s) : status(s) {}
  mqpt_status status;
};

void check(mqpt_status s) {
  if (s != MQPT_OK) throw Failure(s);
}

int exit_code(mqpt_status s) {
  switch (s) {
    case MQPT_OK: return kExitOk;
    case MQPT_ERR_CONFIG:
    case MQPT_ERR_INVALID_ARGUMENT: return kExitConfig;
    case MQPT_ERR_CONVERGENCE: return kExitNoConvergence;
    default: return kExitFailure;
  }
}

MatrixPtr load(const std::string& path) {
  mqpt_matrix* m = nullptr;
  check(mqpt_matrix_load(path.c_str(), &m));
  return MatrixPtr(m);
}

void write_or_print(const mqpt_matrix* m, const std::string& out) {
  if (!out.empty()) {
    check(mqpt_matrix_save(m, out.c_str()));
    return;
  }
  char* text = nullptr;
  check(mqpt_matrix_to_json(m, &text));
  std::puts(text);
  mqpt_string_free(text);
}

struct RunArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
};

int cmd_run(const RunArgs& a, bool has_seed) {
  mqpt_run_summary summary{};
  check(mqpt_run_config(a.config.c_str(), has_seed ? &a.seed : nullptr,
                        a.out.empty() ? nullptr : a.out.c_str(), &summary));
  std::printf("records: %zu\n", summary.records);
  if (summary.unconverged)
    std::printf("records converged: %zu of %zu (see summary.csv)\n",
                summary.records - summary.unconverged, summary.records);
  return kExitOk;
}

struct RecoverArgs {
  std::string target;
  std::string multipass;
  std::string method = "iterative";
  std::string out;
  int passes = 1;
};

int cmd_recover(const RecoverArgs& a) {
  auto t = load(a.target);
  auto rn = load(a.multipass);
  mqpt_matrix* e = nullptr;
  mqpt_recovery_info info{};
  check(mqpt_recover(t.get(), rn.get(), a.passes, a.method.c_str(), &e, &info));
  MatrixPtr err(e);
  write_or_print(err.get(), a.out);
  std::fprintf(stderr, "method=%s iterations=%d residual=%.3e converged=%d\n", a.method.c_str(),
               info.iterations, info.residual, info.converged);
  if (!info.converged) {
    std::fprintf(stderr, "warning: %s\n",
                 info.diverged ? "iteration diverged" : "tolerance not reached");
    return kExitNoConvergence;
  }
  return kExitOk;
}

struct MetricsArgs {
  std::string target;
  std::string channel;
  std::string actual_error;
  double tolerance = 1e-6;
};

int cmd_metrics(const MetricsArgs& a) {
  auto t = load(a.target);
  auto r = load(a.channel);
  char tag[32];
  check(mqpt_matrix_convention(r.get(), tag, sizeof tag));
  MatrixPtr channel;
  if (std::string(tag) == "error") {
    // An error matrix is measured against its target: R = T + E.
    mqpt_matrix* sum = nullptr;
    check(mqpt_combine(t.get(), r.get(), 1.0, &sum));
    channel.reset(sum);
  } else {
    channel = std::move(r);
  }
  mqpt_metrics m{};
  check(mqpt_compute_metrics(t.get(), channel.get(), a.tolerance, &m));
  std::printf("fidelity %.10g\ninfidelity %.10g\ndiamond %.10g\ndiamond_gap %.3g\nbound_ok %d\n",
              m.fidelity, m.infidelity, m.diamond, m.diamond_gap, m.bound_ok);
  if (!a.actual_error.empty()) {
    auto actual = load(a.actual_error);
    mqpt_matrix* measured = nullptr;
    check(mqpt_combine(channel.get(), t.get(), -1.0, &measured));
    MatrixPtr meas(measured);
    mqpt_matrix* diff = nullptr;
    check(mqpt_combine(meas.get(), actual.get(), -1.0, &diff));
    MatrixPtr d(diff);
    double value = 0.0;
    check(mqpt_diamond_norm(d.get(), a.tolerance, &value, nullptr));
    std::printf("differential_diamond %.10g\n", value);
  }
  return kExitOk;
}

int cmd_populations(const std::string& channel_path, const std::string& target_path, int max_m) {
  auto r = load(channel_path);
  MatrixPtr channel;
  char tag[32];
  check(mqpt_matrix_convention(r.get(), tag, sizeof tag));
  if (std::string(tag) == "error") {
    if (target_path.empty()) {
      std::fprintf(stderr, "error: an error-matrix channel needs --target\n");
      return kExitConfig;
    }
    auto t = load(target_path);
    mqpt_matrix* sum = nullptr;
    check(mqpt_combine(t.get(), r.get(), 1.0, &sum));
    channel.reset(sum);
  } else {
    channel = std::move(r);
  }
  std::vector<double> pops(4 * (static_cast<std::size_t>(max_m) + 1));
  check(mqpt_populations(channel.get(), max_m, pops.data(), pops.size()));
  std::printf("M,p00,p01,p10,p11\n");
  for (int m = 0; m <= max_m; ++m) {
    const double* p = &pops[4 * static_cast<std::size_t>(m)];
    std::printf("%d,%.17g,%.17g,%.17g,%.17g\n", m, p[0], p[1], p[2], p[3]);
  }
  return kExitOk;
}

int cmd_fixture(const std::string& name, const std::string& out) {
  mqpt_matrix* m = nullptr;
  if (name == "sqrtx" || name == "cnot10" || name == "cnot01")
    check(mqpt_target(name.c_str(), &m));
  else
    check(mqpt_fixture(name.c_str(), &m));
  MatrixPtr p(m);
  write_or_print(p.get(), out);
  return kExitOk;
}

struct TomographyArgs {
  std::string channel;
  std::string target;
  std::string out;
  std::string counts;
  int passes = 1;
  bool exact_power = false;
  mqpt_noise noise{};
};

int cmd_tomography(TomographyArgs a) {
  auto r = load(a.channel);
  MatrixPtr channel;
  char tag[32];
  check(mqpt_matrix_convention(r.get(), tag, sizeof tag));
  if (std::string(tag) == "error") {
    if (a.target.empty()) {
      std::fprintf(stderr, "error: an error-matrix channel needs --target\n");
      return kExitConfig;
    }
    auto t = load(a.target);
    mqpt_matrix* sum = nullptr;
    check(mqpt_combine(t.get(), r.get(), 1.0, &sum));
    channel.reset(sum);
  } else {
    channel = std::move(r);
  }
  mqpt_matrix* result = nullptr;
  if (a.exact_power) {
    check(mqpt_channel_power(channel.get(), a.passes, &result));
  } else {
    if (!a.counts.empty())
      check(mqpt_simulate_counts(channel.get(), a.passes, &a.noise, a.counts.c_str()));
    check(mqpt_simulate_tomography(channel.get(), a.passes, &a.noise, &result));
  }
  MatrixPtr res(result);
  write_or_print(res.get(), a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipass quantum process tomography"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mqpt_version()));

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a batch experiment from a config file");
  run_cmd->add_option("--config", run.config, "Config file")->required();
  auto* seed_opt = run_cmd->add_option("--seed", run.seed, "Override the config seed");
  run_cmd->add_option("--out", run.out, "Override the output directory");

  RecoverArgs rec;
  auto* rec_cmd = app.add_subcommand("recover", "Recover the single-pass error from R^N");
  rec_cmd->add_option("--target", rec.target, "Target matrix file")->required();
  rec_cmd->add_option("--multipass", rec.multipass, "Measured R^N file")->required();
  rec_cmd->add_option("--passes", rec.passes, "Pass count N")->required();
  rec_cmd->add_option("--method", rec.method, "iterative | sylvester | extsylv")
      ->check(CLI::IsMember({"iterative", "sylvester", "linear", "extsylv", "extended_sylvester"}));
  rec_cmd->add_option("--out", rec.out, "Write the error matrix here (default stdout)");

  MetricsArgs met;
  auto* met_cmd = app.add_subcommand("metrics", "Fidelity and diamond norm of a channel");
  met_cmd->add_option("--target", met.target, "Target matrix file")->required();
  met_cmd->add_option("--channel", met.channel, "Channel or error matrix file")->required();
  met_cmd->add_option("--actual-error", met.actual_error,
                      "Ground-truth error for the differential diamond norm");
  met_cmd->add_option("--tol", met.tolerance, "Diamond-norm gap tolerance");

  std::string pop_channel, pop_target;
  int pop_max = 100;
  auto* pop_cmd = app.add_subcommand("populations", "Populations of S^M |00>> for M = 0..max");
  pop_cmd->add_option("--channel", pop_channel, "Two-qubit channel file")->required();
  pop_cmd->add_option("--target", pop_target, "Target, when --channel holds an error matrix");
  pop_cmd->add_option("--max-m", pop_max, "Largest M")->check(CLI::NonNegativeNumber);

  std::string fix_name, fix_out;
  auto* fix_cmd = app.add_subcommand("fixture", "Print a bundled matrix or ideal target");
  fix_cmd
      ->add_option("name", fix_name,
                   "sqrtx_target | sqrtx_error | cnot10_target | cnot10_error | cnot01_target | "
                   "manila_error | sqrtx | cnot10 | cnot01")
      ->required();
  fix_cmd->add_option("--out", fix_out, "Output file (default stdout)");

  TomographyArgs tom;
  mqpt_noise_init(&tom.noise);
  auto* tom_cmd = app.add_subcommand("tomography", "Simulate tomography of R^N");
  tom_cmd->add_option("--channel", tom.channel, "Single-pass channel file")->required();
  tom_cmd->add_option("--target", tom.target, "Target, when --channel holds an error matrix");
  tom_cmd->add_option("--passes", tom.passes, "Pass count N");
  tom_cmd->add_option("--shots", tom.noise.shots, "Shots per circuit (0 = exact)");
  tom_cmd->add_option("--seed", tom.noise.seed, "Sampling seed");
  tom_cmd->add_option("--spam", tom.noise.spam_infidelity, "SPAM gate infidelity");
  tom_cmd->add_option("--spam-coherent", tom.noise.spam_coherent_fraction,
                      "Coherent fraction of the SPAM infidelity");
  tom_cmd->add_option("--readout", tom.noise.readout_error, "Readout flip probability");
  tom_cmd->add_flag("--mitigate", tom.noise.mitigate_readout, "Invert the readout confusion");
  tom_cmd->add_flag("--exact-power", tom.exact_power, "Output R^N itself, no tomography");
  tom_cmd->add_option("--counts", tom.counts, "Also dump the counts table here");
  tom_cmd->add_option("--out", tom.out, "Output PTM file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run, seed_opt->count() > 0);
    if (*rec_cmd) return cmd_recover(rec);
    if (*met_cmd) return cmd_metrics(met);
    if (*pop_cmd) return cmd_populations(pop_channel, pop_target, pop_max);
    if (*fix_cmd) return cmd_fixture(fix_name, fix_out);
    if (*tom_cmd) return cmd_tomography(tom);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error (%s): %s\n", mqpt_status_string(f.status), mqpt_last_error());
    return exit_code(f.status);
  }
  return kExitFailure;
}
