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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circsym/channels_gates.hpp"
#include "circsym/circuit.hpp"

namespace circsym {

enum class Method { kUnprotected, kQsOriginal, kQsType1, kQsType2, kSts, kStsCat2, kStsErrorFreeCheck };

std::string_view to_string(Method m);
Method parse_method(std::string_view text);

/// Sweep description. The meaning of `grid` depends on the experiment:
///
///   table1           gate counts (default 2, 10)
///   rot_sweep        rotation angles in radians
///   qft_sweep        qubit counts
///   qaoa1_sweep      qubit counts
///   qaoa_multistage  stage counts
///
/// Every experiment also sweeps the noise points kinds x eps2. With
/// `eps_ratio` > 0 the one-qubit rate is eps2 / eps_ratio, otherwise `eps1`.
struct ExperimentConfig {
  std::string experiment_id;
  std::vector<ChannelKind> kinds;
  double eps1 = 0.0;
  std::vector<double> eps2;
  double eps_ratio = 0.0;
  std::vector<double> grid;
  /// Random instances per grid point (QAOA experiments).
  int instances = 1;
  std::uint64_t seed = 1;
  std::string output_path;
  /// Rotation angle for table1; gate counts for rot_sweep; qubit count for
  /// qaoa_multistage.
  double theta = 0.3;
  std::vector<int> gates;
  int qubits = 4;
  /// Empty selects every method that applies to the experiment.
  std::vector<Method> methods;
  /// 0 uses std::thread::hardware_concurrency().
  int workers = 0;

  /// Built-in settings for an experiment id. Throws std::invalid_argument
  /// on an unknown id.
  static ExperimentConfig defaults(std::string_view experiment_id);
  /// `key = value` lines over the defaults of `experiment`; lists are
  /// comma-separated and '#' starts a comment. An `experiment` key in the
  /// text takes precedence over the argument.
  static ExperimentConfig parse(std::string_view text, std::string_view experiment_id = {});
  static ExperimentConfig load(const std::string &path, std::string_view experiment_id = {});

  NoiseSpec noise_at(ChannelKind kind, double eps2) const;
  void validate() const;
};

struct ResultRow {
  std::string experiment_id;
  /// Axis values in a fixed per-experiment order.
  std::vector<std::pair<std::string, std::string>> params;
  Method method = Method::kUnprotected;
  double purity = 0.0;
  double p_pass = 0.0;
  double sof = 0.0;

  /// Value of a parameter; throws std::out_of_range when absent.
  const std::string &param(std::string_view key) const;
};

/// Runs the sweep. Rows come out in grid order regardless of worker
/// scheduling. Writes the CSV when `output_path` is set; throws
/// std::runtime_error when the file cannot be written.
std::vector<ResultRow> run(const ExperimentConfig &config);

/// Header `experiment,params,method,purity,p_pass,sof`; params are
/// `key=value` pairs joined by ';'. Reals use 12 significant digits.
void write_csv(std::ostream &out, const std::vector<ResultRow> &rows);
void write_csv(const std::string &path, const std::vector<ResultRow> &rows);

/// The rotation table as text: one row per method, one column per (gates, ratio)
/// cell, "n/a" where a method does not apply.
std::string format_table1(const std::vector<ResultRow> &rows);

/// Circuits used by the sweeps, exposed for tests.
Circuit rotation_circuit(Method method, int n_gates, double theta);
Circuit qft_method_circuit(Method method, int n);

}  // namespace circsym
