// Copyright 2026 The circsym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fmt/format.h>

#include <CLI11.hpp>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "circsym/circuit_io.hpp"
#include "circsym/harness.hpp"
#include "circsym/sts.hpp"

namespace {

using namespace circsym;

int run_experiment(const std::string &experiment, const std::string &config_path, std::optional<std::uint64_t> seed,
                   const std::string &out) {
  ExperimentConfig config = config_path.empty() ? ExperimentConfig::defaults(experiment)
                                                : ExperimentConfig::load(config_path, experiment);
  if (!experiment.empty() && config.experiment_id != experiment)
    throw std::invalid_argument(fmt::format("config is for {}, not {}", config.experiment_id, experiment));
  if (seed) config.seed = *seed;
  if (!out.empty()) config.output_path = out;
  const auto rows = run(config);
  if (config.output_path.empty()) write_csv(std::cout, rows);
  else
    std::cerr << fmt::format("wrote {} rows to {}\n", rows.size(), config.output_path);
  return 0;
}

int verify_sts(const std::string &circuit_path, const std::string &descriptor, const std::string &noise_kind,
               double eps1, double eps2) {
  const Circuit c = load_circuit(circuit_path);
  const STSDescriptor s = STSDescriptor::parse(descriptor);
  s.validate();
  const auto scope = action_scope(s);
  std::string qubits;
  for (int q : scope.spatial) qubits += (qubits.empty() ? "" : ",") + std::to_string(q);
  const bool exact = is_circuit_sts(c, s, true);
  const bool up_to_phase = exact || is_circuit_sts(c, s, false);
  std::cout << fmt::format("descriptor   {}\n", s.to_string());
  std::cout << fmt::format("scope        qubits {{{}}}, t in [{}, {}]\n", qubits, scope.t_min, scope.t_max);
  std::cout << fmt::format("circuit-sts  {}\n", exact ? "yes" : "no");
  std::cout << fmt::format("up to phase  {}\n", up_to_phase ? "yes" : "no");
  if (exact && !noise_kind.empty()) {
    NoiseSpec noise{eps1, eps2, parse_channel_kind(noise_kind)};
    noise.validate();
    const auto plain = run_postselected(c, noise);
    const auto prot = run_postselected(instrument(c, s), noise);
    std::cout << fmt::format("unprotected  purity {:.6f}\n", plain.purity);
    std::cout << fmt::format("protected    purity {:.6f}  p_pass {:.6f}  sof {:.6f}\n", prot.purity, prot.p_pass,
                             prot.sof);
  }
  return exact ? 0 : 1;
}

int table1(const std::string &out) {
  auto config = ExperimentConfig::defaults("table1");
  config.output_path = out;
  std::cout << format_table1(run(config));
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Circuit symmetry verification simulator"};
  app.require_subcommand(1);

  auto *run_cmd = app.add_subcommand("run", "Run an experiment sweep and write CSV");
  std::string experiment, config_path, out;
  std::optional<std::uint64_t> seed;
  run_cmd->add_option("--experiment", experiment, "table1 | rot_sweep | qft_sweep | qaoa1_sweep | qaoa_multistage");
  run_cmd->add_option("--config", config_path, "key = value config file");
  run_cmd->add_option("--seed", seed, "Base seed for random instances");
  run_cmd->add_option("--out", out, "CSV output path (stdout when omitted)");

  auto *verify_cmd = app.add_subcommand("verify-sts", "Check a descriptor against a circuit");
  std::string circuit_path, descriptor, noise_kind;
  double eps1 = 0.0, eps2 = 0.0;
  verify_cmd->add_option("--circuit", circuit_path, "Circuit text file")->required();
  verify_cmd->add_option("--sts", descriptor, "Descriptor, e.g. \"S{ X0@0, X0@2 }\"")->required();
  verify_cmd->add_option("--noise", noise_kind, "Also compare purities under this channel kind");
  verify_cmd->add_option("--eps1", eps1, "One-qubit error rate for --noise");
  verify_cmd->add_option("--eps2", eps2, "Two-qubit error rate for --noise");

  auto *table_cmd = app.add_subcommand("table1", "Print the purity table for consecutive X-rotations");
  std::string table_out;
  table_cmd->add_option("--out", table_out, "Also write the cells as CSV");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run_cmd) {
      if (experiment.empty() && config_path.empty()) throw std::invalid_argument("run needs --experiment or --config");
      return run_experiment(experiment, config_path, seed, out);
    }
    if (*verify_cmd) return verify_sts(circuit_path, descriptor, noise_kind, eps1, eps2);
    return table1(table_out);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
