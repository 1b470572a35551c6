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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "circsym/channels_gates.hpp"
#include "circsym/linalg.hpp"

namespace circsym {

inline constexpr int kDefaultMaxQubits = 14;
inline constexpr double kPostSelectionFloor = 1e-14;

/// Thrown when a run can never pass its ancilla checks.
class PostSelectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace states {
ComplexMatrix zero();
ComplexMatrix one();
ComplexMatrix plus();
ComplexMatrix minus();
}  // namespace states

/// One gate on a set of qubits, followed by its noise.
///
/// Noise resolution order: `channel` if set, else `noise` if set, else the
/// NoiseSpec passed to the simulator.
struct Placement {
  UnitaryGate gate;
  std::vector<int> qubits;
  std::optional<NoiseSpec> noise;
  std::optional<KrausChannel> channel;
};

struct Moment {
  int time_index = 0;
  std::vector<Placement> placements;
};

/// Time-ordered list of moments on data qubits [0, num_data) followed by
/// ancillas [num_data, num_data + num_ancillas).
///
/// A time index t names the gap before moments[t]; t = moments.size() is the
/// end of the circuit.
class Circuit {
 public:
  explicit Circuit(int num_data_qubits, int num_ancillas = 0);

  int num_data_qubits() const { return num_data_; }
  int num_ancillas() const { return num_ancillas_; }
  int total_qubits() const { return num_data_ + num_ancillas_; }
  int num_moments() const { return static_cast<int>(moments_.size()); }

  const std::vector<Moment> &moments() const { return moments_; }
  const ComplexMatrix &initial_state(int qubit) const { return initial_states_.at(qubit); }
  void set_initial_state(int qubit, ComplexMatrix rho);

  /// Ancilla qubit -> required computational-basis outcome. Ancillas not
  /// listed are traced out.
  const std::map<int, int> &postselection() const { return postselect_; }
  void set_postselection(int ancilla, int outcome);

  /// Adds an ancilla prepared in `init`; returns its qubit index.
  int add_ancilla(ComplexMatrix init = states::zero());

  /// Appends an empty moment and returns it.
  Moment &add_moment();
  /// Appends a moment holding a single placement.
  void append(UnitaryGate gate, std::vector<int> qubits, std::optional<NoiseSpec> noise = std::nullopt);
  void append(Placement placement);
  /// Appends all moments of `other` (same qubit layout), renumbering time.
  void append_circuit(const Circuit &other);

  std::vector<int> data_qubits() const;

  /// Throws std::invalid_argument on overlapping qubits in a moment,
  /// out-of-range indices, arity mismatches or non-increasing time.
  void validate() const;

 private:
  int num_data_;
  int num_ancillas_;
  std::vector<Moment> moments_;
  std::vector<ComplexMatrix> initial_states_;
  std::map<int, int> postselect_;
};

struct RunResult {
  /// Empty when the post-selection can never pass.
  std::optional<DensityMatrix> rho_data;
  double p_pass = 0.0;
  double purity = 0.0;
  double sof = 0.0;

  bool passes() const { return rho_data.has_value(); }
};

/// Sampling overhead factor 1/p_pass - 1. Throws std::domain_error when
/// p_pass is not in (0, 1].
double sof(double p_pass);

/// Noisy density-matrix evolution of the whole register.
DensityMatrix simulate(const Circuit &c, const NoiseSpec &noise, int max_qubits = kDefaultMaxQubits);

/// Projects ancillas onto the given outcomes, traces out every qubit not in
/// `data_qubits` and renormalises.
RunResult post_select(const DensityMatrix &joint, const std::map<int, int> &ancilla_outcomes,
                      const std::vector<int> &data_qubits);
RunResult post_select(const DensityMatrix &joint, const Circuit &c);

/// Same result as simulate + post_select, but allocates each ancilla at its
/// first gate and measures it out after its last one, so only the live
/// qubits are ever held in memory.
RunResult run_postselected(const Circuit &c, const NoiseSpec &noise, int max_live_qubits = kDefaultMaxQubits);

/// Whole-register channel of the circuit as explicit Kraus operators.
KrausChannel channel_of(const Circuit &c, const NoiseSpec &noise, int max_qubits = 6);

/// Appends `src` (same data register) to `dst`, giving each ancilla of
/// `src` a fresh ancilla in `dst` with the same preparation and
/// post-selection. Models an ideal ancilla reset between blocks.
void append_with_fresh_ancillas(Circuit &dst, const Circuit &src);

/// Ideal (noiseless) unitary of the circuit, moments [from, to).
ComplexMatrix circuit_unitary(const Circuit &c, int from = 0, int to = -1);

/// Unitary of the placement embedded in the full register.
ComplexMatrix placement_unitary(const Placement &p, int num_qubits);

/// Resolved noise channel of a placement, or nullopt when noiseless.
std::optional<KrausChannel> placement_noise(const Placement &p, const NoiseSpec &noise);

}  // namespace circsym
