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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace circsym {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kEigenvalueSlack = 1e-9;

/// Dense row-major complex matrix.
///
/// Qubit ordering throughout the library is little-endian: qubit 0 is the
/// least-significant bit of a computational-basis index.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> entries() { return data_; }
  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;

  ComplexMatrix &operator+=(const ComplexMatrix &other);
  ComplexMatrix &operator-=(const ComplexMatrix &other);
  ComplexMatrix &operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// AB - BA. Throws std::invalid_argument on non-square or mismatched inputs.
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);
/// AB + BA.
ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b);

/// Largest entrywise modulus of a - b. Dimensions must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double frobenius_norm(const ComplexMatrix &a);

/// True when a = e^{i phi} b for some phi, entrywise to tol.
bool equal_up_to_phase(const ComplexMatrix &a, const ComplexMatrix &b, double tol);
bool is_unitary(const ComplexMatrix &u, double tol);
bool is_hermitian(const ComplexMatrix &m, double tol);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix &hermitian);

/// Embeds a 2^k operator acting on `qubits` (qubits[0] is the least
/// significant local bit) into the full 2^num_qubits space.
ComplexMatrix embed(const ComplexMatrix &op, std::span<const int> qubits, int num_qubits);

/// Quantum state of a register of qubits.
class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity.
  static DensityMatrix from_matrix(ComplexMatrix m);
  /// Skips validation; used by the simulator on intermediate or
  /// unnormalised states.
  static DensityMatrix unchecked(ComplexMatrix m);

  static DensityMatrix basis_state(int num_qubits, std::size_t index);
  static DensityMatrix pure(std::span<const Complex> amplitudes);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return matrix_.rows(); }
  const ComplexMatrix &matrix() const { return matrix_; }
  ComplexMatrix &mutable_matrix() { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
  bool is_valid() const;

 private:
  DensityMatrix(int num_qubits, ComplexMatrix m) : num_qubits_(num_qubits), matrix_(std::move(m)) {}

  int num_qubits_;
  ComplexMatrix matrix_;
};

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b);

/// Reduced state on `keep`; output qubit k is input qubit keep[k].
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep);

/// tr(rho^2).
double purity(const DensityMatrix &rho);

/// <psi| rho |psi>.
double fidelity_with_pure(const DensityMatrix &rho, std::span<const Complex> psi);

/// log2 of a power-of-two dimension; throws otherwise.
int qubits_for_dim(std::size_t dim);

}  // namespace circsym
