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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circsym/linalg.hpp"

namespace circsym {

inline constexpr double kUnitaryTol = 1e-10;

/// A named unitary acting on `arity` qubits. The first listed qubit of a
/// placement is the least-significant local bit of `matrix`.
struct UnitaryGate {
  UnitaryGate(std::string name, ComplexMatrix matrix, std::vector<double> params = {});

  std::string name;
  int arity;
  ComplexMatrix matrix;
  std::vector<double> params;
};

/// Completely positive trace-preserving map in Kraus form.
struct KrausChannel {
  KrausChannel(int arity, std::vector<ComplexMatrix> kraus_ops);

  int arity;
  std::vector<ComplexMatrix> kraus_ops;
};

enum class ChannelKind { kNone, kBitFlip, kPhaseFlip, kYError, kDepolarizing };

std::string_view to_string(ChannelKind kind);
/// Accepts none, bit_flip, phase_flip, y_error, depolarizing (and x/z/y aliases).
ChannelKind parse_channel_kind(std::string_view text);

/// Gate noise model. Single-qubit gates get kind(one_qubit_rate) on their
/// qubit. A gate on k >= 2 qubits gets kind(two_qubit_rate / k) applied
/// independently to each of its qubits.
struct NoiseSpec {
  double one_qubit_rate = 0.0;
  double two_qubit_rate = 0.0;
  ChannelKind kind = ChannelKind::kNone;

  static NoiseSpec none() { return {}; }
  void validate() const;
  bool is_noiseless() const { return kind == ChannelKind::kNone || (one_qubit_rate == 0.0 && two_qubit_rate == 0.0); }
  double per_qubit_rate(int arity) const;
};

const ComplexMatrix &pauli_i();
const ComplexMatrix &pauli_x();
const ComplexMatrix &pauli_y();
const ComplexMatrix &pauli_z();

/// Single-qubit Pauli channels and the depolarizing channel with total
/// error probability p (weight p/4 on each of X, Y, Z). p = 0 yields {I}.
KrausChannel standard_channel(ChannelKind kind, double p);

/// Channel on `arity` qubits applying `single` independently to each.
KrausChannel tensor_power(const KrausChannel &single, int arity);

/// Noise channel attached to a gate of the given arity, or nullopt if the
/// spec is noiseless.
std::optional<KrausChannel> noise_for_gate(const NoiseSpec &noise, int arity);

enum class Polarity { kOnOne, kOnZero };

/// Adds a control as the new highest-index qubit of the block.
UnitaryGate controlled(const UnitaryGate &u, Polarity polarity = Polarity::kOnOne);

/// Unitary V on arity + ceil(log2 #kraus) qubits with
/// V (|psi> (x) |0>_env) = sum_i K_i|psi> (x) |i>_env. Environment qubits
/// are the high-order bits.
UnitaryGate dilate(const KrausChannel &channel);

namespace gates {
UnitaryGate i();
UnitaryGate h();
UnitaryGate x();
UnitaryGate y();
UnitaryGate z();
UnitaryGate zx();
UnitaryGate cnot();
UnitaryGate rx(double theta);
UnitaryGate rz(double theta);
UnitaryGate rxx(double theta);
UnitaryGate rzz(double theta);
/// diag(1, e^{i 2 pi / 2^n}).
UnitaryGate rn(int n);
}  // namespace gates

/// Looks a gate up by name (h, x, y, z, zx, i, cnot, cx, cz, rx, rz, rxx, rzz,
/// rn, crn). Throws std::invalid_argument on an unknown name or wrong
/// parameter count.
UnitaryGate gate_library(std::string_view name, std::span<const double> params = {});

/// Superoperator of a channel on k qubits, stored sparsely and applied in
/// place to 2^k x 2^k blocks of a density matrix.
class Superop {
 public:
  static Superop from_kraus(std::span<const ComplexMatrix> kraus_ops);
  static Superop from_unitary(const ComplexMatrix &u);

  int arity() const { return arity_; }
  /// The map `next` applied after this one.
  Superop then(const Superop &next) const;
  std::size_t nonzeros() const { return entries_.size(); }

  /// rho <- S(rho) on `qubits` of a 2^n x 2^n matrix.
  void apply(ComplexMatrix &rho, std::span<const int> qubits) const;

 private:
  struct Entry {
    std::uint32_t out;
    std::uint32_t in;
    double re;
    double im;
  };

  Superop(int arity, ComplexMatrix dense);
  template <std::size_t Block>
  static void apply_blocks(Complex *data, std::size_t dim, const std::vector<std::size_t> &bases,
                           const std::vector<std::size_t> &block_index, const std::vector<Entry> &entries);

  int arity_;
  ComplexMatrix dense_;
  std::vector<Entry> entries_;
};

/// Checks that `qubits` has `arity` distinct entries in [0, num_qubits).
void check_qubits(std::span<const int> qubits, int arity, int num_qubits);

DensityMatrix apply_unitary(const DensityMatrix &rho, const UnitaryGate &u, std::span<const int> qubits);
DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel, std::span<const int> qubits);

}  // namespace circsym
