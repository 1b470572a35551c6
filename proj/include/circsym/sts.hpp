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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "circsym/circuit.hpp"
#include "circsym/pauli.hpp"

namespace circsym {

/// Pauli operator inserted in the gap before moment `time`
/// (time == num_moments is the end of the circuit).
struct STSComponent {
  PauliString op;
  int time = 0;

  bool operator==(const STSComponent &) const = default;
};

/// Spatio-temporal stabilizer: components ordered by time. Components that
/// share a time index act in list order.
struct STSDescriptor {
  std::vector<STSComponent> components;

  /// Parses "S{ X1@0, X2@0, -iY0@3 }". Entries with equal time are merged by
  /// multiplication in the order written. Qubit indices are 0-based.
  static STSDescriptor parse(std::string_view text);
  /// Components sorted by time, same-time entries multiplied together.
  static STSDescriptor normalized(std::vector<STSComponent> components);
  /// Same Pauli on `qubits` at each of `times`.
  static STSDescriptor uniform(char pauli, const std::vector<int> &qubits, const std::vector<int> &times);

  std::string to_string() const;
  /// Throws std::invalid_argument when times decrease or are negative.
  void validate() const;
  int max_time() const;
  int min_time() const;
  int num_factors() const;

  bool operator==(const STSDescriptor &) const = default;
};

struct ActionScope {
  std::set<int> spatial;
  int t_min = 0;
  int t_max = 0;
};

ActionScope action_scope(const STSDescriptor &s);
/// Disjoint when either the qubit sets or the closed time intervals are.
bool scopes_disjoint(const ActionScope &a, const ActionScope &b);

/// True iff inserting the components reproduces the ideal circuit unitary,
/// up to a global phase unless `phase_sensitive`. At most 6 qubits.
bool is_circuit_sts(const Circuit &c, const STSDescriptor &s, bool phase_sensitive = false);

/// One ancilla-based check of a descriptor.
struct CheckSpec {
  STSDescriptor sts;
  /// 1: single ancilla. n > 1: n ancillas in a cat state, each component
  /// split evenly across them.
  int num_ancillas = 1;
  /// Noise for the check's own gates; nullopt uses the run's noise model.
  std::optional<NoiseSpec> noise;
  /// A disabled check keeps its ancillas in |0> (no Hadamards), so its
  /// controlled gates never fire.
  bool enabled = true;
};

/// Adds ancillas and controlled-Pauli gates for every check. Each factor of
/// a component is a separate controlled Pauli sharing the ancilla; a
/// non-trivial phase rides on the first factor. Ancillas are post-selected
/// on 0. New ancillas follow the circuit's existing qubits, check by check.
Circuit instrument(const Circuit &c, const std::vector<CheckSpec> &checks);
Circuit instrument(const Circuit &c, const STSDescriptor &s, int num_ancillas = 1,
                   std::optional<NoiseSpec> check_noise = std::nullopt);

/// Definition-based test: every enable-subset of single-ancilla checks must
/// give the same post-selected data state and pass probability on a
/// tomographically complete set of product inputs, noiselessly.
bool simultaneous_observable(const Circuit &c, const std::vector<STSDescriptor> &s_list);

/// Pairwise disjoint action scopes.
bool suff_disjoint(const std::vector<STSDescriptor> &s_list);

/// Searches translations of components that keep each descriptor a circuit
/// STS, only pass components of other descriptors they commute with, and
/// make all action scopes pairwise disjoint.
bool suff_timeshift(const Circuit &c, const std::vector<STSDescriptor> &s_list);

/// Circuit-free pairwise rule used by combine: two descriptors are
/// compatible if either has no component inside the other's time window, or
/// every component inside the other's window commutes with all of the other's
/// components.
bool compatible_pair(const STSDescriptor &a, const STSDescriptor &b);

/// Product descriptor measurable with one ancilla. Throws
/// std::invalid_argument when the inputs are not simultaneously observable
/// (definition-based when `c` is given, compatible_pair otherwise).
STSDescriptor combine(const std::vector<STSDescriptor> &s_list, const Circuit *c = nullptr);

}  // namespace circsym
