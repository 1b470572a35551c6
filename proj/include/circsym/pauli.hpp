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
#include <string>
#include <string_view>
#include <vector>

#include "circsym/channels_gates.hpp"
#include "circsym/linalg.hpp"

namespace circsym {

/// Phase i^k times a tensor product of single-qubit Paulis.
class PauliString {
 public:
  PauliString() = default;
  /// `factors` maps qubit -> one of 'X', 'Y', 'Z'; 'I' entries are dropped.
  explicit PauliString(std::map<int, char> factors, int phase_power = 0);

  /// Same Pauli on each listed qubit.
  static PauliString uniform(char pauli, const std::vector<int> &qubits);
  /// Parses "X0 Z2", "-iY1", "+X0X1"; an empty body or "I" is the identity.
  static PauliString parse(std::string_view text);

  /// Exponent k of the phase i^k, in [0, 4).
  int phase_power() const { return phase_; }
  Complex phase() const;
  const std::map<int, char> &factors() const { return factors_; }
  char at(int qubit) const;
  bool is_identity() const { return factors_.empty(); }
  int weight() const { return static_cast<int>(factors_.size()); }
  std::vector<int> support() const;
  int max_qubit() const { return factors_.empty() ? -1 : factors_.rbegin()->first; }

  PauliString operator*(const PauliString &rhs) const;
  PauliString with_phase_power(int k) const;
  bool commutes_with(const PauliString &other) const;
  bool operator==(const PauliString &other) const = default;

  /// Dense operator on `num_qubits` qubits, phase included.
  ComplexMatrix matrix(int num_qubits) const;
  /// Inverse (adjoint) of the operator.
  PauliString adjoint() const;

  std::string to_string() const;

 private:
  std::map<int, char> factors_;
  int phase_ = 0;
};

/// The single-qubit Pauli gate for 'X', 'Y' or 'Z'.
UnitaryGate pauli_gate(char pauli);

}  // namespace circsym
