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


#include "circsym/sts.hpp"

#include <gtest/gtest.h>

#include "circsym/algorithms.hpp"
#include "test_util.hpp"

using namespace circsym;
using circsym::testing::insert_moment;
using circsym::testing::random_density;

namespace {

const std::vector<int> kFour{0, 1, 2, 3};
const std::vector<double> kAngles{0.3, -1.2, 0.8, 2.1, 0.55, -0.9, 1.7, 0.25, -0.4};

STSDescriptor global_x_pair(int end) { return STSDescriptor::uniform('X', kFour, {0, end}); }

// Shifts components at or after `gap` by one to follow an inserted moment.
STSDescriptor shift_after(const STSDescriptor &s, int gap) {
  STSDescriptor out = s;
  for (auto &c : out.components)
    if (c.time > gap) ++c.time;
  return out;
}

Circuit random_x_circuit(std::mt19937_64 &rng, int n, int moments) {
  std::uniform_real_distribution<double> angle(-3, 3);
  Circuit c(n);
  for (int t = 0; t < moments; ++t) {
    const int q = static_cast<int>(rng() % static_cast<unsigned>(n));
    if (n > 1 && rng() % 2) {
      const int r = (q + 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1))) % n;
      c.append(gates::rxx(angle(rng)), {q, r});
    } else {
      c.append(gates::rx(angle(rng)), {q});
    }
  }
  return c;
}

}  // namespace

TEST(sts_descriptor, parse_merge_and_format) {
  auto s = STSDescriptor::parse("S{ X1@0, X2@0, Z1@1, Z2@1 }");
  ASSERT_EQ(s.components.size(), 2u);
  EXPECT_EQ(s.components[0].op, PauliString::parse("X1 X2"));
  EXPECT_EQ(s.components[1].time, 1);
  EXPECT_EQ(STSDescriptor::parse(s.to_string()), s);
  // Same-time entries act in the order written: Z first, then X.
  auto zx = STSDescriptor::parse("S{ Z0@2, X0@2 }");
  EXPECT_EQ(zx.components[0].op, PauliString::parse("-iY0"));
  EXPECT_EQ(STSDescriptor::parse(zx.to_string()), zx);
  EXPECT_TRUE(STSDescriptor::parse("S{}").components.empty());
  EXPECT_THROW(STSDescriptor::parse("X0@1"), std::invalid_argument);
  EXPECT_THROW(STSDescriptor::parse("S{ X0 }"), std::invalid_argument);
  EXPECT_THROW(STSDescriptor::parse("S{ X0@-1 }"), std::invalid_argument);
  EXPECT_THROW(STSDescriptor::parse("S{ X0@x }"), std::invalid_argument);
}

TEST(sts, global_x_symmetry_of_rotation_network) {
  auto c = xrotation_network(kAngles);
  EXPECT_TRUE(is_circuit_sts(c, global_x_pair(c.num_moments()), true));
  EXPECT_FALSE(is_circuit_sts(c, STSDescriptor::uniform('Z', kFour, {0, c.num_moments()})));
  EXPECT_TRUE(is_circuit_sts(c, STSDescriptor{}));
  // Any X string is a symmetry of an all-X-rotation network.
  EXPECT_TRUE(is_circuit_sts(c, STSDescriptor::parse("S{ X0@0, X2@0, X0@3, X2@3 }"), true));
}

TEST(sts, hadamard_layer_maps_x_to_z) {
  auto c = xrotation_network_hadamard(kAngles);
  const int end = c.num_moments();
  std::vector<STSComponent> comps{{PauliString::uniform('X', kFour), 0}, {PauliString::uniform('Z', kFour), end}};
  EXPECT_TRUE(is_circuit_sts(c, STSDescriptor{comps}, true));
  EXPECT_FALSE(is_circuit_sts(c, global_x_pair(end)));
}

TEST(sts, is_circuit_sts_guards) {
  EXPECT_THROW(is_circuit_sts(Circuit(7), STSDescriptor{}), std::invalid_argument);
  EXPECT_THROW(is_circuit_sts(Circuit(2), STSDescriptor::parse("S{ X0@1 }")), std::out_of_range);
  EXPECT_THROW(is_circuit_sts(Circuit(2), STSDescriptor::parse("S{ X5@0 }")), std::out_of_range);
}

TEST(sts, noiseless_instrumentation_is_transparent) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 1 + trial % 4;
    auto c = random_x_circuit(rng, n, 5);
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    auto s = STSDescriptor::uniform('X', all, {0, c.num_moments()});
    ASSERT_TRUE(is_circuit_sts(c, s, true));
    auto rho = random_density(1, rng);
    c.set_initial_state(0, rho.matrix());
    auto plain = run_postselected(c, NoiseSpec::none());
    for (int anc : {1, 2}) {
      if (anc > s.num_factors()) continue;
      auto r = run_postselected(instrument(c, s, anc), NoiseSpec::none());
      EXPECT_NEAR(r.p_pass, 1.0, 1e-10);
      EXPECT_LT(max_abs_diff(r.rho_data->matrix(), plain.rho_data->matrix()), 1e-10);
    }
  }
}

TEST(sts, postselected_kraus_is_symmetrised) {
  // K_i = (C_i + U C_i U) / 2 for the checked block with U = X on all qubits.
  std::mt19937_64 rng(42);
  auto c = random_x_circuit(rng, 2, 4);
  NoiseSpec noise{0.05, 0.08, ChannelKind::kDepolarizing};
  auto ch = channel_of(c, noise);
  auto s = STSDescriptor::uniform('X', {0, 1}, {0, c.num_moments()});
  const auto u = s.components[0].op.matrix(2);
  for (int trial = 0; trial < 4; ++trial) {
    auto rho = random_density(2, rng);
    ComplexMatrix want(4, 4);
    for (const auto &k : ch.kraus_ops) {
      ComplexMatrix sym = (k + u * k * u) * 0.5;
      want += sym * rho.matrix() * sym.adjoint();
    }
    Circuit probe = c;
    // Inject the input through a noiseless preparation network is not
    // possible for entangled states, so use the joint simulator directly.
    auto inst = instrument(probe, s, 1, NoiseSpec::none());
    ComplexMatrix joint = kron(states::zero(), rho.matrix());
    auto joint_rho = DensityMatrix::unchecked(joint);
    // Evolve through the instrumented circuit with the given noise.
    ComplexMatrix m = joint_rho.matrix();
    for (const auto &mo : inst.moments())
      for (const auto &p : mo.placements) {
        auto big = embed(p.gate.matrix, p.qubits, 3);
        m = big * m * big.adjoint();
        if (auto e = placement_noise(p, noise)) m = apply_channel(DensityMatrix::unchecked(m), *e, p.qubits).matrix();
      }
    auto r = post_select(DensityMatrix::unchecked(m), inst.postselection(), {0, 1});
    ComplexMatrix got = r.rho_data->matrix() * r.p_pass;
    EXPECT_LT(max_abs_diff(got, want), 1e-12);
  }
}

TEST(sts, detection_is_complete_for_single_paulis) {
  auto c = xrotation_network(kAngles);
  const int end = c.num_moments();
  for (int gap = 0; gap <= end; ++gap)
    for (int q = 0; q < 4; ++q)
      for (char p : {'X', 'Y', 'Z'}) {
        auto faulty = insert_moment(c, gap, Placement{pauli_gate(p), {q}, std::nullopt, std::nullopt});
        auto s = shift_after(global_x_pair(end), gap);
        // Components at the insertion gap run before the error.
        if (gap == end) s.components.back().time = end + 1;
        auto r = run_postselected(instrument(faulty, s), NoiseSpec::none());
        if (p == 'X') {
          EXPECT_NEAR(r.p_pass, 1.0, 1e-12) << p << q << "@" << gap;
        } else {
          EXPECT_LT(r.p_pass, 1e-12) << p << q << "@" << gap;
        }
      }
}

TEST(sts, residual_infidelity_is_second_order) {
  Circuit c = rotation_chain(6, 0.7);
  auto s = STSDescriptor::uniform('X', {0}, {0, c.num_moments()});
  std::vector<Complex> ideal{1, 0};
  {
    auto u = circuit_unitary(c);
    ideal = {u(0, 0), u(1, 0)};
  }
  std::vector<double> xs, ys;
  for (double eps : {1e-3, 2e-3, 5e-3, 1e-2}) {
    auto r = run_postselected(instrument(c, s, 1, NoiseSpec::none()), NoiseSpec{eps, eps, ChannelKind::kPhaseFlip});
    xs.push_back(std::log(eps));
    ys.push_back(std::log(1 - fidelity_with_pure(*r.rho_data, ideal)));
  }
  const double slope = (ys.back() - ys.front()) / (xs.back() - xs.front());
  EXPECT_NEAR(slope, 2.0, 0.3);
}

TEST(sts, combine_disjoint_supports) {
  auto a = STSDescriptor::parse("S{ X1@0, X1@1 }"), b = STSDescriptor::parse("S{ X2@0, X2@1 }");
  EXPECT_EQ(combine({a, b}), STSDescriptor::parse("S{ X1@0, X2@0, X1@1, X2@1 }"));
}

TEST(sts, combine_qft_blocks_gives_zx_form) {
  const int n = 3;
  for (int j = 1; j < n; ++j) {
    auto t = qft_times(n, j);
    STSDescriptor pre = STSDescriptor::uniform('Z', {j}, {t.first, t.hadamard});
    // Z after the Hadamard equals X before it.
    STSDescriptor post{{{PauliString({{j, 'X'}}), t.hadamard}, {PauliString({{j, 'Z'}}), t.last}}};
    auto c = qft_circuit(n);
    ASSERT_TRUE(is_circuit_sts(c, pre, true));
    ASSERT_TRUE(is_circuit_sts(c, post, true));
    auto combined = combine({pre, post});
    EXPECT_EQ(combined, qft_sts(n)[static_cast<std::size_t>(j)].sts);
    EXPECT_EQ(combine({pre, post}, &c), combined);
    EXPECT_LT(max_abs_diff(combined.components[1].op.matrix(n), embed(gates::zx().matrix, std::vector<int>{j}, n)), 1e-15);
  }
}

TEST(sts, crossing_checks_are_not_simultaneously_observable) {
  QuboInstance q = QuboInstance::random(3, 7);
  auto stage = qaoa_stage(q, 0.4, 0.9);
  const auto &pair = stage.even_placement_sts;  // Z@0,Z@2 / X@1,X@3 on three qubits
  EXPECT_FALSE(simultaneous_observable(stage.circuit, pair));
  EXPECT_THROW(combine(pair), std::invalid_argument);
  EXPECT_THROW(combine(pair, &stage.circuit), std::invalid_argument);
  EXPECT_FALSE(suff_disjoint(pair));
  EXPECT_FALSE(suff_timeshift(stage.circuit, pair));
}

TEST(sts, qaoa_placements_by_parity) {
  for (int n : {3, 4}) {
    auto q = QuboInstance::random(n, 100 + static_cast<std::uint64_t>(n));
    auto stage = qaoa_stage(q, -0.7, 1.3);
    for (const auto &s : stage.sts) EXPECT_TRUE(is_circuit_sts(stage.circuit, s, true));
    EXPECT_TRUE(simultaneous_observable(stage.circuit, stage.sts)) << n;
    EXPECT_NO_THROW(combine(stage.sts));
    EXPECT_EQ(simultaneous_observable(stage.circuit, stage.even_placement_sts), n % 2 == 0) << n;
  }
}

TEST(sts, combined_check_matches_separate_checks) {
  auto q = QuboInstance::random(4, 9);
  auto stage = qaoa_stage(q, 0.3, -0.8);
  std::mt19937_64 rng(43);
  Circuit c = stage.circuit;
  for (int i = 0; i < 4; ++i) c.set_initial_state(i, random_density(1, rng).matrix());
  std::vector<CheckSpec> separate;
  for (const auto &s : stage.sts) separate.push_back({s, 1, std::nullopt, true});
  auto a = run_postselected(instrument(c, separate), NoiseSpec::none());
  auto b = run_postselected(instrument(c, combine(stage.sts)), NoiseSpec::none());
  EXPECT_NEAR(a.p_pass, b.p_pass, 1e-10);
  EXPECT_LT(max_abs_diff(a.rho_data->matrix(), b.rho_data->matrix()), 1e-10);
}

TEST(sts, sufficient_conditions) {
  auto c = xrotation_network(kAngles);
  auto left = STSDescriptor::parse("S{ X0@0, X1@0, X0@3, X1@3 }");
  auto right = STSDescriptor::parse("S{ X2@0, X3@0, X2@3, X3@3 }");
  EXPECT_TRUE(suff_disjoint({left, right}));
  EXPECT_TRUE(simultaneous_observable(c, {left, right}));

  // Overlapping in space and time, separable by moving components.
  Circuit chain = rotation_chain(3, 0.4);
  auto a = STSDescriptor::parse("S{ X0@0, X0@2 }"), b = STSDescriptor::parse("S{ X0@1, X0@3 }");
  EXPECT_FALSE(suff_disjoint({a, b}));
  EXPECT_TRUE(suff_timeshift(chain, {a, b}));
  EXPECT_TRUE(simultaneous_observable(chain, {a, b}));
}

TEST(sts, cat_instrumentation) {
  auto q = QuboInstance::random(4, 11);
  auto stage = qaoa_stage(q, 0.5, 0.2);
  std::vector<CheckSpec> checks;
  for (const auto &s : stage.sts) checks.push_back({s, 2, std::nullopt, true});
  auto inst = instrument(stage.circuit, checks);
  EXPECT_EQ(inst.num_ancillas(), 4);
  auto r = run_postselected(inst, NoiseSpec::none());
  EXPECT_NEAR(r.p_pass, 1.0, 1e-10);
  EXPECT_NEAR(r.purity, 1.0, 1e-10);
  EXPECT_THROW(instrument(stage.circuit, STSDescriptor::parse("S{ X0@0 }"), 2), std::invalid_argument);
}

TEST(sts, scopes) {
  auto s = STSDescriptor::parse("S{ X0@1, Z3@4 }");
  auto scope = action_scope(s);
  EXPECT_EQ(scope.spatial, (std::set<int>{0, 3}));
  EXPECT_EQ(scope.t_min, 1);
  EXPECT_EQ(scope.t_max, 4);
  EXPECT_TRUE(scopes_disjoint(scope, action_scope(STSDescriptor::parse("S{ X0@5 }"))));
  EXPECT_TRUE(scopes_disjoint(scope, action_scope(STSDescriptor::parse("S{ X1@2 }"))));
  EXPECT_FALSE(scopes_disjoint(scope, action_scope(STSDescriptor::parse("S{ X3@4, X3@6 }"))));
}
