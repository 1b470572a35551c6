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


#include "circsym/pauli.hpp"

#include <cctype>
#include <stdexcept>

namespace circsym {

namespace {

void check_pauli(char p) {
  if (p != 'X' && p != 'Y' && p != 'Z') throw std::invalid_argument(std::string("not a Pauli: ") + p);
}

// Product of single-qubit Paulis a*b = i^k c.
std::pair<char, int> multiply(char a, char b) {
  if (a == 'I') return {b, 0};
  if (b == 'I') return {a, 0};
  if (a == b) return {'I', 0};
  const char c = static_cast<char>('X' + 'Y' + 'Z' - a - b);
  const bool cyclic = (a == 'X' && b == 'Y') || (a == 'Y' && b == 'Z') || (a == 'Z' && b == 'X');
  return {c, cyclic ? 1 : 3};
}

}  // namespace

PauliString::PauliString(std::map<int, char> factors, int phase_power) : phase_(((phase_power % 4) + 4) % 4) {
  for (auto [q, p] : factors) {
    if (q < 0) throw std::invalid_argument("PauliString: negative qubit");
    p = static_cast<char>(std::toupper(static_cast<unsigned char>(p)));
    if (p == 'I') continue;
    check_pauli(p);
    factors_[q] = p;
  }
}

PauliString PauliString::uniform(char pauli, const std::vector<int> &qubits) {
  std::map<int, char> f;
  for (int q : qubits) {
    if (!f.emplace(q, pauli).second) throw std::invalid_argument("PauliString::uniform: repeated qubit");
  }
  return PauliString(std::move(f));
}

PauliString PauliString::parse(std::string_view text) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  int phase = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') phase = 2;
    ++i;
  }
  if (i < text.size() && text[i] == 'i') {
    phase += 1;
    ++i;
  }
  PauliString out({}, phase);
  skip();
  while (i < text.size()) {
    const char p = static_cast<char>(std::toupper(static_cast<unsigned char>(text[i])));
    if (p != 'I' && p != 'X' && p != 'Y' && p != 'Z') {
      throw std::invalid_argument("PauliString::parse: unexpected '" + std::string(1, text[i]) + "'");
    }
    ++i;
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) {
      if (p == 'I') {
        skip();
        continue;
      }
      throw std::invalid_argument("PauliString::parse: missing qubit index");
    }
    const int q = std::stoi(std::string(text.substr(start, i - start)));
    if (p != 'I') out = out * PauliString({{q, p}});
    skip();
  }
  return out;
}

Complex PauliString::phase() const {
  static const Complex kPhases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[phase_];
}

char PauliString::at(int qubit) const {
  auto it = factors_.find(qubit);
  return it == factors_.end() ? 'I' : it->second;
}

std::vector<int> PauliString::support() const {
  std::vector<int> s;
  for (const auto &[q, p] : factors_) s.push_back(q);
  return s;
}

PauliString PauliString::operator*(const PauliString &rhs) const {
  PauliString out;
  int k = phase_ + rhs.phase_;
  out.factors_ = factors_;
  for (const auto &[q, b] : rhs.factors_) {
    auto [c, dk] = multiply(at(q), b);
    k += dk;
    if (c == 'I') {
      out.factors_.erase(q);
    } else {
      out.factors_[q] = c;
    }
  }
  out.phase_ = k % 4;
  return out;
}

PauliString PauliString::with_phase_power(int k) const {
  PauliString out = *this;
  out.phase_ = ((k % 4) + 4) % 4;
  return out;
}

bool PauliString::commutes_with(const PauliString &other) const {
  int anti = 0;
  for (const auto &[q, p] : factors_) {
    const char o = other.at(q);
    if (o != 'I' && o != p) ++anti;
  }
  return anti % 2 == 0;
}

ComplexMatrix PauliString::matrix(int num_qubits) const {
  if (max_qubit() >= num_qubits) throw std::out_of_range("PauliString::matrix: qubit out of range");
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (int q = 0; q < num_qubits; ++q) {
    const char p = at(q);
    const ComplexMatrix &f = p == 'X' ? pauli_x() : p == 'Y' ? pauli_y() : p == 'Z' ? pauli_z() : pauli_i();
    m = kron(f, m);
  }
  return m * phase();
}

PauliString PauliString::adjoint() const { return with_phase_power(4 - phase_); }

std::string PauliString::to_string() const {
  static const char *kPrefix[] = {"", "i", "-", "-i"};
  std::string s = kPrefix[phase_];
  if (factors_.empty()) return s + "I";
  bool first = true;
  for (const auto &[q, p] : factors_) {
    if (!first) s += ' ';
    first = false;
    s += p;
    s += std::to_string(q);
  }
  return s;
}

UnitaryGate pauli_gate(char pauli) {
  switch (pauli) {
    case 'X':
      return gates::x();
    case 'Y':
      return gates::y();
    case 'Z':
      return gates::z();
    default:
      throw std::invalid_argument(std::string("pauli_gate: not a Pauli: ") + pauli);
  }
}

}  // namespace circsym
