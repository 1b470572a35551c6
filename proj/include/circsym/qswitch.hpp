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

#include <optional>
#include <vector>

#include "circsym/circuit.hpp"

namespace circsym {

enum class SwitchVariant { kOriginalPair, kMultiType1, kMultiType2 };

/// One operation inside a switch: a unitary gate, or a channel realised
/// by its dilation on private environment qubits that are traced out at the
/// end. `noise` overrides the run's noise model for this operation.
struct SwitchOperation {
  std::optional<UnitaryGate> gate;
  std::optional<KrausChannel> channel;
  std::optional<NoiseSpec> noise;

  static SwitchOperation of_gate(UnitaryGate g, std::optional<NoiseSpec> noise = std::nullopt);
  static SwitchOperation of_channel(KrausChannel ch, std::optional<NoiseSpec> noise = std::nullopt);
  int arity() const;
};

struct SwitchSpec {
  std::vector<SwitchOperation> ops;
  SwitchVariant variant = SwitchVariant::kOriginalPair;
  /// Explicit control state; by default each control starts in |0> and a
  /// Hadamard gate prepares |+>.
  std::optional<ComplexMatrix> control_init;
};

/// Gate-model switch circuits. Data qubits come first, then environment
/// qubits of channel operations, then the control qubits (post-selected on
/// 0 after a closing Hadamard).
///
///   original_pair: H(c); A controlled on 1; B; A controlled on 0; H(c).
///   multi_type1:   one control c_i per gate G_i, i < N; G_i is controlled on
///                  1 in forward order, G_N runs uncontrolled, then G_i
///                  controlled on 0 in reverse order.
///   multi_type2:   one control; G_1 controlled on 1, G_2..G_N uncontrolled,
///                  G_1 controlled on 0.
Circuit build_switch(const SwitchSpec &spec);

/// Unnormalised switch output sum_ij 1/4({A_i,B_j} rho {A_i,B_j}^dag
/// + [A_i,B_j] rho [A_i,B_j]^dag).
DensityMatrix prop1_raw(const KrausChannel &a, const KrausChannel &b, const DensityMatrix &rho);

/// Classical mixture of both orders: 1/2 sum_ij (A_i B_j rho B_j^dag A_i^dag
/// + B_j A_i rho A_i^dag B_j^dag).
DensityMatrix prop1_average(const KrausChannel &a, const KrausChannel &b, const DensityMatrix &rho);

struct Prop1Result {
  DensityMatrix rho;
  double p_pass;
};

/// Anti-commutator branch, renormalised. Throws PostSelectionError when the
/// branch has (numerically) zero weight.
Prop1Result prop1_postselected(const KrausChannel &a, const KrausChannel &b, const DensityMatrix &rho);

}  // namespace circsym
