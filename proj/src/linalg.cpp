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

#include "circsym/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace circsym {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("ComplexMatrix: rows and cols must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw std::invalid_argument("ComplexMatrix: rows and cols must be positive");
  }
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: entries length must equal rows*cols");
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) {
    throw std::invalid_argument("ComplexMatrix: rows and cols must be positive");
  }
  data_.reserve(rows_ * cols_);
  for (const auto &row : rows) {
    if (row.size() != cols_) {
      throw std::invalid_argument("ComplexMatrix: ragged initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto &z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
  require_same_shape(*this, other, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
  require_same_shape(*this, other, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex s) {
  for (auto &z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("operator*: inner dimensions differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex s = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc) out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
    }
  return out;
}

namespace {
void require_square_pair(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
  if (!a.is_square() || !b.is_square()) throw std::invalid_argument(std::string(what) + ": operands must be square");
  require_same_shape(a, b, what);
}
}  // namespace

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_square_pair(a, b, "commutator");
  return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_square_pair(a, b, "anticommutator");
  return a * b + b * a;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

double frobenius_norm(const ComplexMatrix &a) {
  double s = 0.0;
  for (const auto &z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

bool equal_up_to_phase(const ComplexMatrix &a, const ComplexMatrix &b, double tol) {
  require_same_shape(a, b, "equal_up_to_phase");
  // Align phases on the largest entry of b.
  auto ea = a.entries();
  auto eb = b.entries();
  std::size_t k = 0;
  for (std::size_t i = 1; i < eb.size(); ++i)
    if (std::abs(eb[i]) > std::abs(eb[k])) k = i;
  if (std::abs(eb[k]) < tol) return max_abs_diff(a, b) <= tol;
  if (std::abs(ea[k]) < tol) return false;
  const Complex phase = (ea[k] / eb[k]) / std::abs(ea[k] / eb[k]);
  double m = 0.0;
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - phase * eb[i]));
  return m <= tol;
}

bool is_unitary(const ComplexMatrix &u, double tol) {
  if (!u.is_square()) return false;
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())) <= tol;
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
  return true;
}

double min_eigenvalue(const ComplexMatrix &hermitian) {
  const auto n = static_cast<Eigen::Index>(hermitian.rows());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = hermitian(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ComplexMatrix embed(const ComplexMatrix &op, std::span<const int> qubits, int num_qubits) {
  const std::size_t k = qubits.size();
  if (op.rows() != (std::size_t{1} << k) || !op.is_square()) {
    throw std::invalid_argument("embed: operator dimension does not match qubit count");
  }
  std::size_t mask = 0;
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits) throw std::out_of_range("embed: qubit index out of range");
    if (mask & (std::size_t{1} << q)) throw std::invalid_argument("embed: repeated qubit index");
    mask |= std::size_t{1} << q;
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  auto local = [&](std::size_t full) {
    std::size_t l = 0;
    for (std::size_t i = 0; i < k; ++i) l |= ((full >> qubits[i]) & 1u) << i;
    return l;
  };
  ComplexMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t lr = local(r);
    const std::size_t rest = r & ~mask;
    for (std::size_t lc = 0; lc < op.cols(); ++lc) {
      const Complex v = op(lr, lc);
      if (v == Complex{}) continue;
      std::size_t c = rest;
      for (std::size_t i = 0; i < k; ++i) c |= ((lc >> i) & 1u) << qubits[i];
      out(r, c) = v;
    }
  }
  return out;
}

int qubits_for_dim(std::size_t dim) {
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (!m.is_square()) throw std::invalid_argument("DensityMatrix: matrix must be square");
  DensityMatrix rho(qubits_for_dim(m.rows()), std::move(m));
  rho.validate();
  return rho;
}

DensityMatrix DensityMatrix::unchecked(ComplexMatrix m) {
  if (!m.is_square()) throw std::invalid_argument("DensityMatrix: matrix must be square");
  const int n = qubits_for_dim(m.rows());
  return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::basis_state(int num_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw std::out_of_range("basis_state: index out of range");
  ComplexMatrix m(dim, dim);
  m(index, index) = 1.0;
  return DensityMatrix(num_qubits, std::move(m));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> amplitudes) {
  const int n = qubits_for_dim(amplitudes.size());
  double norm = 0.0;
  for (const auto &a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kTraceTol) throw std::invalid_argument("pure: state vector is not normalised");
  ComplexMatrix m(amplitudes.size(), amplitudes.size());
  for (std::size_t r = 0; r < amplitudes.size(); ++r)
    for (std::size_t c = 0; c < amplitudes.size(); ++c) m(r, c) = amplitudes[r] * std::conj(amplitudes[c]);
  return DensityMatrix(n, std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  auto m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return DensityMatrix(num_qubits, std::move(m));
}

void DensityMatrix::validate() const {
  if (!is_hermitian(matrix_, kHermitianTol)) throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(matrix_.trace() - Complex{1.0}) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace is not 1");
  }
  if (min_eigenvalue(matrix_) < -kEigenvalueSlack) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

bool DensityMatrix::is_valid() const {
  try {
    validate();
    return true;
  } catch (const std::invalid_argument &) {
    return false;
  }
}

DensityMatrix kron(const DensityMatrix &a, const DensityMatrix &b) {
  return DensityMatrix::unchecked(kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const int> keep) {
  const int n = rho.num_qubits();
  std::size_t keep_mask = 0;
  for (int q : keep) {
    if (q < 0 || q >= n) throw std::out_of_range("partial_trace: qubit index out of range");
    if (keep_mask & (std::size_t{1} << q)) throw std::invalid_argument("partial_trace: repeated qubit index");
    keep_mask |= std::size_t{1} << q;
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q)
    if (!(keep_mask & (std::size_t{1} << q))) traced.push_back(q);

  const std::size_t kept_dim = std::size_t{1} << keep.size();
  const std::size_t traced_dim = std::size_t{1} << traced.size();
  auto scatter = [](std::size_t local, std::span<const int> qubits) {
    std::size_t full = 0;
    for (std::size_t i = 0; i < qubits.size(); ++i) full |= ((local >> i) & 1u) << qubits[i];
    return full;
  };
  std::vector<std::size_t> kept_offsets(kept_dim);
  for (std::size_t i = 0; i < kept_dim; ++i) kept_offsets[i] = scatter(i, keep);
  std::vector<std::size_t> traced_offsets(traced_dim);
  for (std::size_t i = 0; i < traced_dim; ++i) traced_offsets[i] = scatter(i, traced);

  const auto &m = rho.matrix();
  ComplexMatrix out(kept_dim, kept_dim);
  for (std::size_t r = 0; r < kept_dim; ++r)
    for (std::size_t c = 0; c < kept_dim; ++c) {
      Complex s = 0.0;
      for (std::size_t t : traced_offsets) s += m(kept_offsets[r] | t, kept_offsets[c] | t);
      out(r, c) = s;
    }
  return DensityMatrix::unchecked(std::move(out));
}

double purity(const DensityMatrix &rho) {
  const auto &m = rho.matrix();
  double s = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) s += (m(r, c) * m(c, r)).real();
  return std::min(s, 1.0 + kEigenvalueSlack);
}

double fidelity_with_pure(const DensityMatrix &rho, std::span<const Complex> psi) {
  if (psi.size() != rho.dim()) throw std::invalid_argument("fidelity_with_pure: dimension mismatch");
  const auto &m = rho.matrix();
  Complex s = 0.0;
  for (std::size_t r = 0; r < psi.size(); ++r)
    for (std::size_t c = 0; c < psi.size(); ++c) s += std::conj(psi[r]) * m(r, c) * psi[c];
  return s.real();
}

}  // namespace circsym
