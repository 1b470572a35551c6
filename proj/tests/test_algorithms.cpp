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


#include "circsym/algorithms.hpp"

#include <gtest/gtest.h>

#include <numbers>

#include "test_util.hpp"

using namespace circsym;
using circsym::testing::insert_moment;
using circsym::testing::rotation_oracle;

namespace {

std::size_t reverse_bits(std::size_t x, int n) {
  std::size_t r = 0;
  for (int i = 0; i < n; ++i) r |= ((x >> i) & 1u) << (n - 1 - i);
  return r;
}

ComplexMatrix global(char p, int n) {
  std::vector<int> all;
  for (int i = 0; i < n; ++i) all.push_back(i);
  return PauliString::uniform(p, all).matrix(n);
}

}  // namespace

TEST(rotation_chain, purities) {
  NoiseSpec noise{0.001, 0.002, ChannelKind::kBitFlip};
  EXPECT_NEAR(run_postselected(rotation_chain(2, 0.9), NoiseSpec::none()).purity, 1.0, 1e-12);
  EXPECT_NEAR(run_postselected(rotation_chain(2, 0.9), noise).purity, 0.9960, 5e-5);
  EXPECT_NEAR(run_postselected(rotation_chain(10, 0.9), noise).purity, 0.9804, 5e-5);
  EXPECT_THROW(rotation_chain(0, 0.1), std::invalid_argument);
}

TEST(qft, two_qubits_on_zero_gives_uniform_state) {
  auto r = run_postselected(qft_circuit(2), NoiseSpec::none());
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(std::abs(r.rho_data->matrix()(i, j) - 0.25), 0.0, 1e-12);
  EXPECT_NEAR(r.purity, 1.0, 1e-12);
}

TEST(qft, unitary_is_bit_reversed_dft) {
  for (int n = 2; n <= 4; ++n) {
    const std::size_t d = std::size_t{1} << n;
    auto u = circuit_unitary(qft_circuit(n));
    // Without the swap network both input and output registers read
    // big-endian in qubit order.
    for (std::size_t x = 0; x < d; ++x)
      for (std::size_t y = 0; y < d; ++y) {
        const double angle = 2 * std::numbers::pi * static_cast<double>(reverse_bits(x, n) * y) / static_cast<double>(d);
        const Complex want = std::exp(Complex(0, angle)) / std::sqrt(static_cast<double>(d));
        EXPECT_LT(std::abs(u(y, x) - want), 1e-12) << n << " " << x << " " << y;
      }
  }
}

TEST(qft, per_qubit_blocks_commute_with_z) {
  for (int n = 2; n <= 4; ++n) {
    auto c = qft_circuit(n);
    for (int j = 0; j < n; ++j) {
      auto t = qft_times(n, j);
      EXPECT_TRUE(is_circuit_sts(c, STSDescriptor::uniform('Z', {j}, {t.first, t.hadamard}), true));
      EXPECT_TRUE(is_circuit_sts(c, STSDescriptor::uniform('Z', {j}, {t.hadamard + 1, t.last}), true));
    }
    for (const auto &chk : qft_sts(n)) EXPECT_TRUE(is_circuit_sts(c, chk.sts, true)) << chk.sts.to_string();
  }
}

TEST(qft, protected_circuit_is_transparent_without_noise) {
  auto checks = qft_sts(4);
  auto r = run_postselected(instrument(qft_circuit(4), checks), NoiseSpec::none());
  EXPECT_NEAR(r.p_pass, 1.0, 1e-10);
  EXPECT_NEAR(r.purity, 1.0, 1e-10);
}

TEST(qft, z_noise_is_undetected_and_costs_purity) {
  NoiseSpec z{0.0003, 0.003, ChannelKind::kPhaseFlip};
  NoiseSpec x{0.0003, 0.003, ChannelKind::kBitFlip};
  auto plain = run_postselected(qft_circuit(4), z);
  auto prot = run_postselected(instrument(qft_circuit(4), qft_sts(4)), z);
  EXPECT_LT(prot.purity, plain.purity);

  // Only errors raised by the check gates themselves get flagged.
  auto ideal_checks = qft_sts(4);
  for (auto &check : ideal_checks) check.noise = NoiseSpec::none();
  auto ideal = run_postselected(instrument(qft_circuit(4), ideal_checks), z);
  EXPECT_LT(1 - ideal.p_pass, 1e-12);
  EXPECT_NEAR(ideal.purity, plain.purity, 1e-10);

  auto flagged_x = run_postselected(instrument(qft_circuit(4), qft_sts(4)), x);
  EXPECT_LT(1 - prot.p_pass, 1 - flagged_x.p_pass);
}

TEST(qubo, objective_matches_hamiltonian_diagonal) {
  auto q = QuboInstance::random(4, 3);
  auto h = qaoa_hamiltonians(q);
  for (std::size_t x = 0; x < 16; ++x) {
    std::vector<int> s;
    for (int i = 0; i < 4; ++i) s.push_back(((x >> i) & 1u) ? -1 : 1);
    EXPECT_NEAR((h.even(x, x) + h.odd(x, x)).real(), q.objective(s), 1e-12);
  }
  QuboInstance no_b = q;
  no_b.b.assign(4, 0.0);
  EXPECT_LT(frobenius_norm(qaoa_hamiltonians(no_b).odd), 1e-15);
}

TEST(qubo, parity_symmetries) {
  for (int n = 2; n <= 5; ++n) {
    auto q = QuboInstance::random(n, 50 + static_cast<std::uint64_t>(n));
    auto h = qaoa_hamiltonians(q);
    const auto x = global('X', n), z = global('Z', n);
    EXPECT_LT(frobenius_norm(commutator(h.even, x)), 1e-10);
    EXPECT_LT(frobenius_norm(anticommutator(h.odd, x)), 1e-10);
    auto u = rotation_oracle(h.even, 2 * 0.77);
    EXPECT_LT(frobenius_norm(commutator(u, x)), 1e-10);
    EXPECT_LT(frobenius_norm(commutator(u, z)), 1e-10);
  }
}

TEST(qubo, parse_and_validate) {
  auto q = QuboInstance::parse("# demo\nn=3\na 0 1 0.5\na 2 1 -0.25\nb 2 1.5\n");
  EXPECT_EQ(q.n, 3);
  EXPECT_DOUBLE_EQ(q.coupling(1, 0), 0.5);
  EXPECT_DOUBLE_EQ(q.coupling(1, 2), -0.25);
  EXPECT_DOUBLE_EQ(q.b[2], 1.5);
  EXPECT_THROW(QuboInstance::parse("a 0 1 1\n"), std::invalid_argument);
  EXPECT_THROW(QuboInstance::parse("n=2\na 0 0 1\n"), std::invalid_argument);
  EXPECT_THROW(QuboInstance::parse("n=2\na 0 5 1\n"), std::invalid_argument);
  EXPECT_THROW(QuboInstance::parse("n=2\nc 0 1\n"), std::invalid_argument);
  QuboInstance bad = q;
  bad.a[0] = 1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(qaoa, stage_unitary_matches_exponential) {
  for (int n = 2; n <= 5; ++n) {
    auto q = QuboInstance::random(n, 200 + static_cast<std::uint64_t>(n));
    const double beta = 0.61, gamma = -1.37;
    auto stage = qaoa_stage(q, beta, gamma);
    auto h = qaoa_hamiltonians(q);
    auto want = rotation_oracle(h.mixer, 2 * beta) * rotation_oracle(h.even + h.odd, 2 * gamma);
    EXPECT_LT(max_abs_diff(circuit_unitary(stage.circuit), want), 1e-10) << n;
  }
}

TEST(qaoa, zero_angles_give_identity) {
  auto q = QuboInstance::random(3, 1);
  auto stage = qaoa_stage(q, 0.0, 0.0);
  EXPECT_LT(max_abs_diff(circuit_unitary(stage.circuit), ComplexMatrix::identity(8)), 1e-14);
  QaoaParams params{{0.0}, {0.0}};
  auto r = run_postselected(qaoa_circuit(q, params, Protection::kStsSingle), NoiseSpec::none());
  EXPECT_NEAR(r.p_pass, 1.0, 1e-12);
}

TEST(qaoa, noiseless_expectation_matches_statevector) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 5; ++trial) {
    auto q = QuboInstance::random(3, 300 + static_cast<std::uint64_t>(trial));
    auto params = QaoaParams::random(2, 400 + static_cast<std::uint64_t>(trial));
    auto h = qaoa_hamiltonians(q);
    const ComplexMatrix hp = h.even + h.odd;
    std::vector<Complex> psi(8, 1 / std::sqrt(8.0));
    for (int p = 0; p < 2; ++p) {
      auto u = rotation_oracle(h.mixer, 2 * params.beta[static_cast<std::size_t>(p)]) *
               rotation_oracle(hp, 2 * params.gamma[static_cast<std::size_t>(p)]);
      std::vector<Complex> next(8);
      for (std::size_t r = 0; r < 8; ++r)
        for (std::size_t c = 0; c < 8; ++c) next[r] += u(r, c) * psi[c];
      psi = next;
    }
    double want = 0;
    for (std::size_t x = 0; x < 8; ++x) want += std::norm(psi[x]) * hp(x, x).real();
    for (auto prot : {Protection::kNone, Protection::kStsSingle, Protection::kStsCat2}) {
      auto r = run_postselected(qaoa_circuit(q, params, prot), NoiseSpec::none());
      EXPECT_NEAR(r.p_pass, 1.0, 1e-10);
      EXPECT_NEAR(r.purity, 1.0, 1e-10);
      Complex got = 0;
      for (std::size_t x = 0; x < 8; ++x) got += r.rho_data->matrix()(x, x) * hp(x, x);
      EXPECT_NEAR(got.real(), want, 1e-10) << to_string(prot);
    }
  }
}

TEST(qaoa, single_errors_in_even_block_are_detected) {
  for (int n : {3, 4}) {
    auto q = QuboInstance::random(n, 500 + static_cast<std::uint64_t>(n));
    auto stage = qaoa_stage(q, 0.9, 0.35);
    for (int gap = stage.b1 + 1; gap < stage.b2; ++gap)
      for (int qubit = 0; qubit < n; ++qubit)
        for (char p : {'X', 'Y', 'Z'}) {
          auto faulty = insert_moment(stage.circuit, gap, Placement{pauli_gate(p), {qubit}, std::nullopt, std::nullopt});
          std::vector<CheckSpec> checks;
          for (auto s : stage.sts) {
            for (auto &comp : s.components)
              if (comp.time > gap) ++comp.time;
            checks.push_back({s, 1, std::nullopt, true});
          }
          auto r = run_postselected(instrument(faulty, checks), NoiseSpec::none());
          EXPECT_LT(r.p_pass, 1e-12) << n << " " << p << qubit << "@" << gap;
        }
  }
}

TEST(qaoa, circuit_layout) {
  auto q = QuboInstance::random(4, 2);
  auto params = QaoaParams::random(3, 5);
  EXPECT_EQ(qaoa_circuit(q, params, Protection::kNone).num_ancillas(), 0);
  EXPECT_EQ(qaoa_circuit(q, params, Protection::kStsSingle).num_ancillas(), 6);
  EXPECT_EQ(qaoa_circuit(q, params, Protection::kStsCat2).num_ancillas(), 12);
  auto odd = qaoa_stage(QuboInstance::random(3, 2), 0.1, 0.2);
  EXPECT_EQ(odd.after_barrier, odd.b2 + 1);
  EXPECT_TRUE(odd.circuit.moments()[static_cast<std::size_t>(odd.b2)].placements.empty());
}
