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

#include "circsym/channels_gates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circsym {

namespace {

constexpr Complex kI{0.0, 1.0};

bool is_power_of_two_dim(std::size_t n, int &qubits) {
  qubits = 0;
  while ((std::size_t{1} << qubits) < n) ++qubits;
  return (std::size_t{1} << qubits) == n;
}

}  // namespace

UnitaryGate::UnitaryGate(std::string name_, ComplexMatrix matrix_, std::vector<double> params_)
    : name(std::move(name_)), arity(0), matrix(std::move(matrix_)), params(std::move(params_)) {
  if (!matrix.is_square() || !is_power_of_two_dim(matrix.rows(), arity) || arity == 0) {
    throw std::invalid_argument("UnitaryGate '" + name + "': matrix must be 2^k x 2^k with k >= 1");
  }
  if (!is_unitary(matrix, kUnitaryTol)) {
    throw std::invalid_argument("UnitaryGate '" + name + "': matrix is not unitary");
  }
}

KrausChannel::KrausChannel(int arity_, std::vector<ComplexMatrix> ops) : arity(arity_), kraus_ops(std::move(ops)) {
  if (arity < 1) throw std::invalid_argument("KrausChannel: arity must be positive");
  if (kraus_ops.empty()) throw std::invalid_argument("KrausChannel: needs at least one Kraus operator");
  const std::size_t dim = std::size_t{1} << arity;
  ComplexMatrix sum(dim, dim);
  for (const auto &k : kraus_ops) {
    if (k.rows() != dim || k.cols() != dim) {
      throw std::invalid_argument("KrausChannel: Kraus operator dimension does not match arity");
    }
    sum += k.adjoint() * k;
  }
  if (max_abs_diff(sum, ComplexMatrix::identity(dim)) > kUnitaryTol) {
    throw std::invalid_argument("KrausChannel: operators are not trace preserving");
  }
}

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::kNone:
      return "none";
    case ChannelKind::kBitFlip:
      return "bit_flip";
    case ChannelKind::kPhaseFlip:
      return "phase_flip";
    case ChannelKind::kYError:
      return "y_error";
    case ChannelKind::kDepolarizing:
      return "depolarizing";
  }
  return "none";
}

ChannelKind parse_channel_kind(std::string_view text) {
  if (text == "none") return ChannelKind::kNone;
  if (text == "bit_flip" || text == "x") return ChannelKind::kBitFlip;
  if (text == "phase_flip" || text == "z") return ChannelKind::kPhaseFlip;
  if (text == "y_error" || text == "y") return ChannelKind::kYError;
  if (text == "depolarizing" || text == "depol") return ChannelKind::kDepolarizing;
  throw std::invalid_argument("unknown channel kind '" + std::string(text) + "'");
}

void NoiseSpec::validate() const {
  auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!ok(one_qubit_rate) || !ok(two_qubit_rate)) {
    throw std::invalid_argument("NoiseSpec: error rates must lie in [0, 1]");
  }
}

double NoiseSpec::per_qubit_rate(int arity) const {
  if (arity <= 1) return one_qubit_rate;
  return two_qubit_rate / static_cast<double>(arity);
}

const ComplexMatrix &pauli_i() {
  static const ComplexMatrix m{{1.0, 0.0}, {0.0, 1.0}};
  return m;
}
const ComplexMatrix &pauli_x() {
  static const ComplexMatrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}
const ComplexMatrix &pauli_y() {
  static const ComplexMatrix m{{0.0, -kI}, {kI, 0.0}};
  return m;
}
const ComplexMatrix &pauli_z() {
  static const ComplexMatrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}

KrausChannel standard_channel(ChannelKind kind, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("standard_channel: probability must lie in [0, 1]");
  if (kind == ChannelKind::kNone || p == 0.0) return KrausChannel(1, {pauli_i()});
  std::vector<ComplexMatrix> ops;
  auto add = [&](double w, const ComplexMatrix &m) {
    if (w > 0.0) ops.push_back(std::sqrt(w) * m);
  };
  switch (kind) {
    case ChannelKind::kBitFlip:
      add(1.0 - p, pauli_i());
      add(p, pauli_x());
      break;
    case ChannelKind::kPhaseFlip:
      add(1.0 - p, pauli_i());
      add(p, pauli_z());
      break;
    case ChannelKind::kYError:
      add(1.0 - p, pauli_i());
      add(p, pauli_y());
      break;
    case ChannelKind::kDepolarizing:
      add(1.0 - 3.0 * p / 4.0, pauli_i());
      add(p / 4.0, pauli_x());
      add(p / 4.0, pauli_y());
      add(p / 4.0, pauli_z());
      break;
    case ChannelKind::kNone:
      break;
  }
  return KrausChannel(1, std::move(ops));
}

KrausChannel tensor_power(const KrausChannel &single, int arity) {
  if (arity < 1) throw std::invalid_argument("tensor_power: arity must be positive");
  std::vector<ComplexMatrix> ops = single.kraus_ops;
  for (int q = 1; q < arity; ++q) {
    std::vector<ComplexMatrix> next;
    next.reserve(ops.size() * single.kraus_ops.size());
    // Higher qubits are the left kron factor.
    for (const auto &hi : single.kraus_ops)
      for (const auto &lo : ops) next.push_back(kron(hi, lo));
    ops = std::move(next);
  }
  return KrausChannel(arity * single.arity, std::move(ops));
}

std::optional<KrausChannel> noise_for_gate(const NoiseSpec &noise, int arity) {
  if (noise.is_noiseless()) return std::nullopt;
  const double p = noise.per_qubit_rate(arity);
  if (p == 0.0) return std::nullopt;
  return tensor_power(standard_channel(noise.kind, p), arity);
}

UnitaryGate controlled(const UnitaryGate &u, Polarity polarity) {
  const std::size_t d = u.matrix.rows();
  ComplexMatrix m(2 * d, 2 * d);
  const std::size_t active = polarity == Polarity::kOnOne ? d : 0;
  const std::size_t idle = polarity == Polarity::kOnOne ? 0 : d;
  for (std::size_t i = 0; i < d; ++i) {
    m(idle + i, idle + i) = 1.0;
    for (std::size_t j = 0; j < d; ++j) m(active + i, active + j) = u.matrix(i, j);
  }
  const std::string prefix = polarity == Polarity::kOnOne ? "c" : "c0";
  return UnitaryGate(prefix + u.name, std::move(m), u.params);
}

UnitaryGate dilate(const KrausChannel &channel) {
  const std::size_t d = std::size_t{1} << channel.arity;
  int env_qubits = 0;
  while ((std::size_t{1} << env_qubits) < channel.kraus_ops.size()) ++env_qubits;
  if (env_qubits == 0) env_qubits = 1;
  const std::size_t env_dim = std::size_t{1} << env_qubits;
  const std::size_t dim = d * env_dim;

  // Columns with environment index 0 carry the Kraus isometry; the rest are
  // completed by Gram-Schmidt against the standard basis.
  std::vector<std::vector<Complex>> cols;
  for (std::size_t psi = 0; psi < d; ++psi) {
    std::vector<Complex> col(dim);
    for (std::size_t k = 0; k < channel.kraus_ops.size(); ++k)
      for (std::size_t r = 0; r < d; ++r) col[k * d + r] = channel.kraus_ops[k](r, psi);
    cols.push_back(std::move(col));
  }
  auto orthonormalise = [&](std::vector<Complex> v) -> bool {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto &c : cols) {
        Complex dot = 0.0;
        for (std::size_t i = 0; i < dim; ++i) dot += std::conj(c[i]) * v[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= dot * c[i];
      }
    double norm = 0.0;
    for (const auto &z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm < 1e-8) return false;
    for (auto &z : v) z /= norm;
    cols.push_back(std::move(v));
    return true;
  };
  for (std::size_t e = 0; e < dim && cols.size() < dim; ++e) {
    std::vector<Complex> v(dim);
    v[e] = 1.0;
    orthonormalise(std::move(v));
  }
  // Column order: first d columns are env=0, the completion fills the rest.
  ComplexMatrix m(dim, dim);
  for (std::size_t c = 0; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) m(r, c) = cols[c][r];
  return UnitaryGate("dilation", std::move(m));
}

namespace gates {

UnitaryGate i() { return UnitaryGate("i", pauli_i()); }
UnitaryGate h() {
  const double s = 1.0 / std::sqrt(2.0);
  return UnitaryGate("h", ComplexMatrix{{s, s}, {s, -s}});
}
UnitaryGate x() { return UnitaryGate("x", pauli_x()); }
UnitaryGate y() { return UnitaryGate("y", pauli_y()); }
UnitaryGate z() { return UnitaryGate("z", pauli_z()); }
UnitaryGate zx() { return UnitaryGate("zx", ComplexMatrix{{0.0, -1.0}, {1.0, 0.0}}); }
UnitaryGate cnot() { return UnitaryGate("cnot", controlled(x()).matrix); }

UnitaryGate rx(double theta) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  return UnitaryGate("rx", ComplexMatrix{{c, -kI * s}, {-kI * s, c}}, {theta});
}

UnitaryGate rz(double theta) {
  const Complex a = std::exp(-kI * (theta / 2.0));
  return UnitaryGate("rz", ComplexMatrix{{a, 0.0}, {0.0, std::conj(a)}}, {theta});
}

UnitaryGate rxx(double theta) {
  const double c = std::cos(theta / 2.0);
  const Complex s = -kI * std::sin(theta / 2.0);
  return UnitaryGate("rxx",
                     ComplexMatrix{{c, 0.0, 0.0, s}, {0.0, c, s, 0.0}, {0.0, s, c, 0.0}, {s, 0.0, 0.0, c}},
                     {theta});
}

UnitaryGate rzz(double theta) {
  const Complex a = std::exp(-kI * (theta / 2.0));
  const Complex b = std::conj(a);
  const std::array<Complex, 4> diag{a, b, b, a};
  return UnitaryGate("rzz", ComplexMatrix::diagonal(diag), {theta});
}

UnitaryGate rn(int n) {
  if (n < 0) throw std::invalid_argument("rn: n must be non-negative");
  const double angle = 2.0 * std::numbers::pi * std::ldexp(1.0, -n);
  const std::array<Complex, 2> diag{1.0, std::exp(kI * angle)};
  return UnitaryGate("rn", ComplexMatrix::diagonal(diag), {static_cast<double>(n)});
}

}  // namespace gates

namespace {

std::optional<UnitaryGate> phased_pauli(std::string_view name) {
  Complex phase = 1.0;
  if (name.starts_with("-i")) {
    phase = -kI;
    name.remove_prefix(2);
  } else if (name.starts_with("-")) {
    phase = -1.0;
    name.remove_prefix(1);
  } else if (name.starts_with("+i")) {
    phase = kI;
    name.remove_prefix(2);
  } else if (name.starts_with("i") && name.size() == 2) {
    phase = kI;
    name.remove_prefix(1);
  } else {
    return std::nullopt;
  }
  const ComplexMatrix *p = nullptr;
  if (name == "x") p = &pauli_x();
  if (name == "y") p = &pauli_y();
  if (name == "z") p = &pauli_z();
  if (p == nullptr) return std::nullopt;
  std::string label = phase == -1.0 ? "-" : (phase == kI ? "i" : "-i");
  return UnitaryGate(label + std::string(name), phase * *p);
}

void require_params(std::string_view name, std::span<const double> params, std::size_t n) {
  if (params.size() != n) {
    throw std::invalid_argument("gate '" + std::string(name) + "' expects " + std::to_string(n) + " parameter(s)");
  }
}

}  // namespace

UnitaryGate gate_library(std::string_view name, std::span<const double> params) {
  if (name == "h") return require_params(name, params, 0), gates::h();
  if (name == "x") return require_params(name, params, 0), gates::x();
  if (name == "y") return require_params(name, params, 0), gates::y();
  if (name == "z") return require_params(name, params, 0), gates::z();
  if (name == "i") return require_params(name, params, 0), gates::i();
  if (name == "zx") return require_params(name, params, 0), gates::zx();
  if (name == "cnot") return require_params(name, params, 0), gates::cnot();
  if (name == "rx") return require_params(name, params, 1), gates::rx(params[0]);
  if (name == "rz") return require_params(name, params, 1), gates::rz(params[0]);
  if (name == "rxx") return require_params(name, params, 1), gates::rxx(params[0]);
  if (name == "rzz") return require_params(name, params, 1), gates::rzz(params[0]);
  if (name == "rn") {
    require_params(name, params, 1);
    return gates::rn(static_cast<int>(std::lround(params[0])));
  }
  if (auto p = phased_pauli(name)) return require_params(name, params, 0), *p;
  if (name.starts_with("c0") && name.size() > 2) {
    return controlled(gate_library(name.substr(2), params), Polarity::kOnZero);
  }
  if (name.starts_with("c") && name.size() > 1) {
    return controlled(gate_library(name.substr(1), params), Polarity::kOnOne);
  }
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

Superop::Superop(int arity, ComplexMatrix dense) : arity_(arity), dense_(std::move(dense)) {
  const std::size_t n = dense_.rows();
  for (std::size_t o = 0; o < n; ++o)
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(dense_(o, i)) > 1e-300) {
        entries_.push_back(
            {static_cast<std::uint32_t>(o), static_cast<std::uint32_t>(i), dense_(o, i).real(), dense_(o, i).imag()});
      }
}

Superop Superop::from_kraus(std::span<const ComplexMatrix> kraus_ops) {
  if (kraus_ops.empty()) throw std::invalid_argument("Superop: no Kraus operators");
  const std::size_t d = kraus_ops.front().rows();
  int arity = 0;
  if (!is_power_of_two_dim(d, arity) || arity == 0) throw std::invalid_argument("Superop: bad dimension");
  // S[(a,b),(c,d)] = sum_K K[a][c] conj(K[b][d]), vec index a*D + b.
  ComplexMatrix s(d * d, d * d);
  for (const auto &k : kraus_ops) {
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument("Superop: inconsistent Kraus dimensions");
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t c = 0; c < d; ++c) {
        const Complex kac = k(a, c);
        if (kac == Complex{}) continue;
        for (std::size_t b = 0; b < d; ++b)
          for (std::size_t e = 0; e < d; ++e) s(a * d + b, c * d + e) += kac * std::conj(k(b, e));
      }
  }
  return Superop(arity, std::move(s));
}

Superop Superop::from_unitary(const ComplexMatrix &u) {
  const ComplexMatrix ops[] = {u};
  return from_kraus(ops);
}

Superop Superop::then(const Superop &next) const {
  if (next.arity_ != arity_) throw std::invalid_argument("Superop::then: arity mismatch");
  return Superop(arity_, next.dense_ * dense_);
}

template <std::size_t Block>
void Superop::apply_blocks(Complex *data, std::size_t dim, const std::vector<std::size_t> &bases,
                           const std::vector<std::size_t> &block_index, const std::vector<Entry> &entries) {
  // Columns are processed kBatch blocks at a time so the entry loop
  // vectorises across the batch. Plain real arithmetic avoids the NaN
  // recovery path of std::complex products.
  constexpr std::size_t kBatch = 8;
  std::vector<double> in_re(Block * kBatch), in_im(Block * kBatch), out_re(Block * kBatch), out_im(Block * kBatch);
  for (std::size_t rb : bases) {
    Complex *row = data + rb * dim;
    for (std::size_t start = 0; start < bases.size(); start += kBatch) {
      const std::size_t count = std::min(kBatch, bases.size() - start);
      for (std::size_t j = 0; j < count; ++j) {
        const Complex *origin = row + bases[start + j];
        for (std::size_t k = 0; k < Block; ++k) {
          in_re[k * kBatch + j] = origin[block_index[k]].real();
          in_im[k * kBatch + j] = origin[block_index[k]].imag();
        }
      }
      std::fill(out_re.begin(), out_re.end(), 0.0);
      std::fill(out_im.begin(), out_im.end(), 0.0);
      for (const auto &e : entries) {
        const double *xr = &in_re[e.in * kBatch];
        const double *xi = &in_im[e.in * kBatch];
        double *yr = &out_re[e.out * kBatch];
        double *yi = &out_im[e.out * kBatch];
        for (std::size_t j = 0; j < kBatch; ++j) {
          yr[j] += e.re * xr[j] - e.im * xi[j];
          yi[j] += e.re * xi[j] + e.im * xr[j];
        }
      }
      for (std::size_t j = 0; j < count; ++j) {
        Complex *origin = row + bases[start + j];
        for (std::size_t k = 0; k < Block; ++k)
          origin[block_index[k]] = Complex(out_re[k * kBatch + j], out_im[k * kBatch + j]);
      }
    }
  }
}

void Superop::apply(ComplexMatrix &rho, std::span<const int> qubits) const {
  const int n = qubits_for_dim(rho.rows());
  check_qubits(qubits, arity_, n);
  const std::size_t local_dim = std::size_t{1} << arity_;
  const std::size_t block = local_dim * local_dim;
  const std::size_t dim = rho.rows();

  std::array<std::size_t, 16> offsets{};
  if (local_dim > offsets.size()) throw std::invalid_argument("Superop::apply: arity too large");
  std::size_t mask = 0;
  for (std::size_t l = 0; l < local_dim; ++l) {
    std::size_t off = 0;
    for (int i = 0; i < arity_; ++i) off |= ((l >> i) & 1u) << qubits[i];
    offsets[l] = off;
  }
  for (int q : qubits) mask |= std::size_t{1} << q;

  std::vector<std::size_t> bases;
  bases.reserve(dim >> arity_);
  for (std::size_t i = 0; i < dim; ++i)
    if ((i & mask) == 0) bases.push_back(i);

  std::vector<std::size_t> block_index(block);
  for (std::size_t a = 0; a < local_dim; ++a)
    for (std::size_t b = 0; b < local_dim; ++b) block_index[a * local_dim + b] = offsets[a] * dim + offsets[b];

  Complex *data = rho.entries().data();
  switch (arity_) {
    case 1: apply_blocks<4>(data, dim, bases, block_index, entries_); break;
    case 2: apply_blocks<16>(data, dim, bases, block_index, entries_); break;
    case 3: apply_blocks<64>(data, dim, bases, block_index, entries_); break;
    default: apply_blocks<256>(data, dim, bases, block_index, entries_); break;
  }
}

void check_qubits(std::span<const int> qubits, int arity, int num_qubits) {
  if (static_cast<int>(qubits.size()) != arity) {
    throw std::invalid_argument("expected " + std::to_string(arity) + " qubit indices, got " +
                                std::to_string(qubits.size()));
  }
  std::uint64_t seen = 0;
  for (int q : qubits) {
    if (q < 0 || q >= num_qubits) throw std::out_of_range("qubit index " + std::to_string(q) + " out of range");
    if (seen & (std::uint64_t{1} << q)) throw std::invalid_argument("repeated qubit index " + std::to_string(q));
    seen |= std::uint64_t{1} << q;
  }
}

DensityMatrix apply_unitary(const DensityMatrix &rho, const UnitaryGate &u, std::span<const int> qubits) {
  check_qubits(qubits, u.arity, rho.num_qubits());
  ComplexMatrix m = rho.matrix();
  Superop::from_unitary(u.matrix).apply(m, qubits);
  return DensityMatrix::unchecked(std::move(m));
}

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel, std::span<const int> qubits) {
  check_qubits(qubits, channel.arity, rho.num_qubits());
  ComplexMatrix m = rho.matrix();
  Superop::from_kraus(channel.kraus_ops).apply(m, qubits);
  return DensityMatrix::unchecked(std::move(m));
}

}  // namespace circsym
