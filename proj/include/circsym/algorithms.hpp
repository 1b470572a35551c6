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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circsym/circuit.hpp"
#include "circsym/sts.hpp"

namespace circsym {

/// `n_gates` moments of R_x(theta) on one qubit.
Circuit rotation_chain(int n_gates, double theta);

/// Four-qubit X-rotation network: R_x on every qubit; R_xx on (0,1) and
/// (2,3); R_xx on (1,2) with R_x on 0 and 3. Takes 9 angles in that order.
/// Commutes with X on all four qubits.
Circuit xrotation_network(const std::vector<double> &angles);
/// The same network followed by a Hadamard on every qubit, so that
/// Z^{(x)4} C = C X^{(x)4}.
Circuit xrotation_network_hadamard(const std::vector<double> &angles);

/// QFT without the final reversal swaps, one gate per moment. For
/// j = 0..n-1: H on j, then R_{k-j+1} on target j controlled by k, k > j.
Circuit qft_circuit(int n);

/// Gap indices of QFT qubit j: before its first gate, before its Hadamard,
/// after its last gate.
struct QftQubitTimes {
  int first;
  int hadamard;
  int last;
};
QftQubitTimes qft_times(int n, int j);

/// Per-qubit checks {Z@first, ZX@before-H, Z@after-last}, one ancilla each.
/// The middle factor is XZ (Z applied first), i.e. -iY.
std::vector<CheckSpec> qft_sts(int n);

/// max x^T A x + b^T x over x in {-1, 1}^n. A is symmetric with zero
/// diagonal.
struct QuboInstance {
  int n = 0;
  std::vector<double> a;  // row-major n x n
  std::vector<double> b;

  double coupling(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  void validate() const;
  /// Classical objective; x_i = +1 corresponds to qubit i in |0>.
  double objective(const std::vector<int> &x) const;

  /// Text form: "n=<k>", then "a i j v" and "b i v" lines; '#' comments.
  /// An "a i j v" line sets both a_ij and a_ji.
  static QuboInstance parse(std::string_view text);
  static QuboInstance load(const std::string &path);
  /// a_ij (i < j) and b_i drawn from U(-1, 1).
  static QuboInstance random(int n, std::uint64_t seed);
};

struct QaoaHamiltonians {
  ComplexMatrix even;   // sum_{i != j} a_ij Z_i Z_j
  ComplexMatrix odd;    // sum_i b_i Z_i
  ComplexMatrix mixer;  // sum_i X_i
};
QaoaHamiltonians qaoa_hamiltonians(const QuboInstance &q);

enum class Protection { kNone, kStsSingle, kStsCat2 };
std::string_view to_string(Protection p);

/// One QAOA stage: R_z(2 b_i gamma) layer, R_zz(4 a_ij gamma) for i < j
/// (one per moment), an empty barrier moment when n is odd, then
/// R_x(2 beta) layer. Boundaries b0..b3 are gap indices around the three
/// blocks; `after_barrier` equals b2 + 1 for odd n and b2 otherwise.
struct QaoaStage {
  Circuit circuit;
  int b0 = 0, b1 = 0, b2 = 0, after_barrier = 0, b3 = 0;
  /// Z^N and X^N checks: even n {Z@b0, Z@b2}, {X@b1, X@b3}; odd n
  /// {Z@b0, Z@after_barrier}, {X@b1, X@b2} with the mixer unprotected.
  std::vector<STSDescriptor> sts;
  /// The even-n placements, whatever the parity.
  std::vector<STSDescriptor> even_placement_sts;
};
QaoaStage qaoa_stage(const QuboInstance &q, double beta, double gamma);

struct QaoaParams {
  std::vector<double> beta;
  std::vector<double> gamma;

  int stages() const { return static_cast<int>(beta.size()); }
  /// beta, gamma ~ U(-pi, pi).
  static QaoaParams random(int stages, std::uint64_t seed);
};

/// Hadamards on all qubits, then the stages. Each protected stage measures
/// its two checks on fresh ancillas (one each, or a two-ancilla cat state).
Circuit qaoa_circuit(const QuboInstance &q, const QaoaParams &params, Protection protection,
                     std::optional<NoiseSpec> check_noise = std::nullopt);

}  // namespace circsym
