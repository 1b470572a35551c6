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

#include <gtest/gtest.h>

#include <numbers>

#include "test_util.hpp"

using namespace circsym;
using circsym::testing::random_density;
using circsym::testing::rotation_oracle;

namespace {

DensityMatrix apply_kraus_oracle(const DensityMatrix &rho, const std::vector<ComplexMatrix> &ops,
                                 const std::vector<int> &qubits) {
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto &k : ops) {
    auto big = embed(k, qubits, rho.num_qubits());
    out += big * rho.matrix() * big.adjoint();
  }
  return DensityMatrix::unchecked(out);
}

void expect_trace_preserving(const KrausChannel &ch) {
  const std::size_t d = std::size_t{1} << ch.arity;
  ComplexMatrix s(d, d);
  for (const auto &k : ch.kraus_ops) s += k.adjoint() * k;
  EXPECT_LT(max_abs_diff(s, ComplexMatrix::identity(d)), 1e-12);
}

}  // namespace

TEST(channels, standard_channels_are_trace_preserving) {
  for (auto kind : {ChannelKind::kBitFlip, ChannelKind::kPhaseFlip, ChannelKind::kYError, ChannelKind::kDepolarizing})
    for (double p : {0.0, 0.001, 0.3, 1.0}) expect_trace_preserving(standard_channel(kind, p));
}

TEST(channels, bit_flip_action) {
  auto ch = standard_channel(ChannelKind::kBitFlip, 0.1);
  auto out = apply_channel(DensityMatrix::basis_state(1, 0), ch, std::vector<int>{0});
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.9, 1e-14);
  EXPECT_NEAR(out.matrix()(1, 1).real(), 0.1, 1e-14);
}

TEST(channels, depolarizing_full_strength_is_maximally_mixing) {
  std::mt19937_64 rng(11);
  auto rho = random_density(1, rng);
  auto out = apply_channel(rho, standard_channel(ChannelKind::kDepolarizing, 1.0), std::vector<int>{0});
  EXPECT_LT(max_abs_diff(out.matrix(), DensityMatrix::maximally_mixed(1).matrix()), 1e-12);
}

TEST(channels, zero_rate_is_identity) {
  std::mt19937_64 rng(12);
  auto rho = random_density(2, rng);
  for (auto kind : {ChannelKind::kBitFlip, ChannelKind::kDepolarizing}) {
    auto out = apply_channel(rho, standard_channel(kind, 0.0), std::vector<int>{1});
    EXPECT_LT(max_abs_diff(out.matrix(), rho.matrix()), 1e-14);
  }
}

TEST(channels, rejects_bad_rates_and_non_tp_sets) {
  EXPECT_THROW(standard_channel(ChannelKind::kBitFlip, -0.1), std::invalid_argument);
  EXPECT_THROW(standard_channel(ChannelKind::kBitFlip, 1.1), std::invalid_argument);
  EXPECT_THROW(KrausChannel(1, {ComplexMatrix::identity(2) * 0.9}), std::invalid_argument);
  NoiseSpec bad{0.5, 2.0, ChannelKind::kBitFlip};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(channels, parse_channel_kind_roundtrip) {
  for (auto kind : {ChannelKind::kNone, ChannelKind::kBitFlip, ChannelKind::kPhaseFlip, ChannelKind::kYError,
                    ChannelKind::kDepolarizing})
    EXPECT_EQ(parse_channel_kind(to_string(kind)), kind);
  EXPECT_THROW(parse_channel_kind("amplitude"), std::invalid_argument);
}

TEST(channels, two_qubit_gate_noise_splits_rate) {
  NoiseSpec n{0.001, 0.004, ChannelKind::kBitFlip};
  EXPECT_DOUBLE_EQ(n.per_qubit_rate(1), 0.001);
  EXPECT_DOUBLE_EQ(n.per_qubit_rate(2), 0.002);
  auto ch = noise_for_gate(n, 2);
  ASSERT_TRUE(ch.has_value());
  EXPECT_EQ(ch->arity, 2);
  expect_trace_preserving(*ch);
  // |00> -> no flip with probability (1 - 0.002)^2.
  auto out = apply_channel(DensityMatrix::basis_state(2, 0), *ch, std::vector<int>{0, 1});
  EXPECT_NEAR(out.matrix()(0, 0).real(), 0.998 * 0.998, 1e-14);
  EXPECT_FALSE(noise_for_gate(NoiseSpec::none(), 1).has_value());
}

TEST(gates, rotations_match_matrix_exponential) {
  for (double theta : {0.0, 0.3, -1.7, std::numbers::pi}) {
    EXPECT_LT(max_abs_diff(gates::rx(theta).matrix, rotation_oracle(pauli_x(), theta)), 1e-12);
    EXPECT_LT(max_abs_diff(gates::rz(theta).matrix, rotation_oracle(pauli_z(), theta)), 1e-12);
    EXPECT_LT(max_abs_diff(gates::rxx(theta).matrix, rotation_oracle(kron(pauli_x(), pauli_x()), theta)), 1e-12);
    EXPECT_LT(max_abs_diff(gates::rzz(theta).matrix, rotation_oracle(kron(pauli_z(), pauli_z()), theta)), 1e-12);
  }
}

TEST(gates, zx_is_x_times_z) {
  EXPECT_LT(max_abs_diff(gates::zx().matrix, pauli_x() * pauli_z()), 1e-15);
  ComplexMatrix expected{{0, -1}, {1, 0}};
  EXPECT_LT(max_abs_diff(gates::zx().matrix, expected), 1e-15);
}

TEST(gates, controlled_and_library) {
  auto cx = controlled(gates::x());
  EXPECT_EQ(cx.arity, 2);
  EXPECT_LT(max_abs_diff(cx.matrix, gates::cnot().matrix), 1e-15);
  // Control is local bit 1: |10> (index 2) -> |11>.
  EXPECT_EQ(cx.matrix(3, 2), Complex(1));
  auto c0x = controlled(gates::x(), Polarity::kOnZero);
  EXPECT_EQ(c0x.matrix(1, 0), Complex(1));
  EXPECT_EQ(c0x.matrix(2, 2), Complex(1));

  std::vector<double> none, one{0.4};
  EXPECT_LT(max_abs_diff(gate_library("h", none).matrix, gates::h().matrix), 1e-15);
  EXPECT_LT(max_abs_diff(gate_library("crx", one).matrix, controlled(gates::rx(0.4)).matrix), 1e-15);
  EXPECT_LT(max_abs_diff(gate_library("-iy", none).matrix, Complex(0, -1) * pauli_y()), 1e-15);
  EXPECT_THROW(gate_library("rx", none), std::invalid_argument);
  EXPECT_THROW(gate_library("frobnicate", none), std::invalid_argument);
  EXPECT_THROW(UnitaryGate("bad", ComplexMatrix{{1, 1}, {0, 1}}), std::invalid_argument);
}

TEST(gates, rn_phase) {
  auto g = gates::rn(3);
  EXPECT_LT(std::abs(g.matrix(1, 1) - std::exp(Complex(0, 2 * std::numbers::pi / 8))), 1e-15);
}

TEST(superop, matches_kraus_oracle_on_random_placements) {
  std::mt19937_64 rng(13);
  auto ch = tensor_power(standard_channel(ChannelKind::kDepolarizing, 0.2), 2);
  auto s = Superop::from_unitary(gates::rxx(0.9).matrix).then(Superop::from_kraus(ch.kraus_ops));
  for (const std::vector<int> &q : {std::vector<int>{0, 1}, std::vector<int>{2, 0}, std::vector<int>{1, 3}}) {
    auto rho = random_density(4, rng);
    auto want = apply_kraus_oracle(apply_unitary(rho, gates::rxx(0.9), q), ch.kraus_ops, q);
    ComplexMatrix got = rho.matrix();
    s.apply(got, q);
    EXPECT_LT(max_abs_diff(got, want.matrix()), 1e-12);
  }
}

TEST(superop, unitary_conjugation_matches_dense) {
  std::mt19937_64 rng(14);
  auto rho = random_density(3, rng);
  auto u = controlled(gates::rx(1.1));
  std::vector<int> q{0, 2};
  auto got = apply_unitary(rho, u, q);
  auto big = embed(u.matrix, q, 3);
  EXPECT_LT(max_abs_diff(got.matrix(), big * rho.matrix() * big.adjoint()), 1e-12);
}

TEST(superop, permutation_gates_stay_sparse) {
  EXPECT_EQ(Superop::from_unitary(gates::cnot().matrix).nonzeros(), 16u);
  EXPECT_EQ(Superop::from_unitary(gates::rzz(0.3).matrix).nonzeros(), 16u);
}

TEST(channels, dilation_reproduces_channel) {
  std::mt19937_64 rng(15);
  auto ch = standard_channel(ChannelKind::kDepolarizing, 0.6);
  auto v = dilate(ch);
  EXPECT_EQ(v.arity, 3);
  auto rho = random_density(1, rng);
  auto joint = kron(DensityMatrix::basis_state(2, 0), rho);
  auto out = apply_unitary(joint, v, std::vector<int>{0, 1, 2});
  auto red = partial_trace(out, std::vector<int>{0});
  auto want = apply_channel(rho, ch, std::vector<int>{0});
  EXPECT_LT(max_abs_diff(red.matrix(), want.matrix()), 1e-12);
}

TEST(channels, invalid_qubits_rejected) {
  auto rho = DensityMatrix::maximally_mixed(2);
  EXPECT_THROW(apply_unitary(rho, gates::cnot(), std::vector<int>{0, 0}), std::invalid_argument);
  EXPECT_THROW(apply_unitary(rho, gates::h(), std::vector<int>{2}), std::out_of_range);
  EXPECT_THROW(apply_unitary(rho, gates::h(), std::vector<int>{0, 1}), std::invalid_argument);
}
