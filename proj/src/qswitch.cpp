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


#include "circsym/qswitch.hpp"

#include <stdexcept>

namespace circsym {

SwitchOperation SwitchOperation::of_gate(UnitaryGate g, std::optional<NoiseSpec> noise) {
  return SwitchOperation{std::move(g), std::nullopt, noise};
}

SwitchOperation SwitchOperation::of_channel(KrausChannel ch, std::optional<NoiseSpec> noise) {
  return SwitchOperation{std::nullopt, std::move(ch), noise};
}

int SwitchOperation::arity() const {
  if (gate) return gate->arity;
  if (channel) return channel->arity;
  throw std::invalid_argument("SwitchOperation: neither gate nor channel set");
}

namespace {

// Concrete unitary and qubit list (without control) of one operation.
struct Realised {
  UnitaryGate gate;
  std::vector<int> qubits;
  std::optional<NoiseSpec> noise;
};

}  // namespace

Circuit build_switch(const SwitchSpec &spec) {
  const auto n_ops = spec.ops.size();
  if (spec.variant == SwitchVariant::kOriginalPair && n_ops != 2) {
    throw std::invalid_argument("build_switch: original_pair needs exactly 2 operations");
  }
  if (n_ops < 2) throw std::invalid_argument("build_switch: need at least 2 operations");
  const int width = spec.ops.front().arity();
  for (const auto &op : spec.ops)
    if (op.arity() != width) throw std::invalid_argument("build_switch: operations act on different register widths");

  Circuit c(width);
  std::vector<int> data = c.data_qubits();
  std::vector<Realised> real;
  for (const auto &op : spec.ops) {
    if (op.gate) {
      real.push_back({*op.gate, data, op.noise});
      continue;
    }
    UnitaryGate v = dilate(*op.channel);
    std::vector<int> qubits = data;
    for (int e = width; e < v.arity; ++e) qubits.push_back(c.add_ancilla());
    real.push_back({std::move(v), std::move(qubits), op.noise});
  }

  const int n_controls = spec.variant == SwitchVariant::kMultiType1 ? static_cast<int>(n_ops) - 1 : 1;
  std::vector<int> controls;
  for (int i = 0; i < n_controls; ++i) {
    const int q = c.add_ancilla(spec.control_init.value_or(states::zero()));
    c.set_postselection(q, 0);
    controls.push_back(q);
  }

  auto plain = [&](const Realised &r) { c.append(Placement{r.gate, r.qubits, r.noise, std::nullopt}); };
  auto ctrl = [&](const Realised &r, int control, Polarity pol) {
    std::vector<int> q = r.qubits;
    q.push_back(control);
    c.append(Placement{controlled(r.gate, pol), q, r.noise, std::nullopt});
  };
  auto hadamards = [&] {
    for (int q : controls) c.append(gates::h(), {q});
  };

  if (!spec.control_init) hadamards();
  switch (spec.variant) {
    case SwitchVariant::kOriginalPair:
    case SwitchVariant::kMultiType2:
      ctrl(real[0], controls[0], Polarity::kOnOne);
      for (std::size_t i = 1; i < n_ops; ++i) plain(real[i]);
      ctrl(real[0], controls[0], Polarity::kOnZero);
      break;
    case SwitchVariant::kMultiType1:
      for (std::size_t i = 0; i + 1 < n_ops; ++i) ctrl(real[i], controls[i], Polarity::kOnOne);
      plain(real.back());
      for (std::size_t i = n_ops - 1; i-- > 0;) ctrl(real[i], controls[i], Polarity::kOnZero);
      break;
  }
  hadamards();
  return c;
}

namespace {

void check_pair(const KrausChannel &a, const KrausChannel &b, const DensityMatrix &rho) {
  if (a.arity != b.arity || a.arity != rho.num_qubits()) {
    throw std::invalid_argument("prop1: channel arities must match the state");
  }
}

ComplexMatrix sandwich(const ComplexMatrix &k, const ComplexMatrix &rho) { return k * rho * k.adjoint(); }

ComplexMatrix anticommutator_part(const KrausChannel &a, const KrausChannel &b, const DensityMatrix &rho) {
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto &ai : a.kraus_ops)
    for (const auto &bj : b.kraus_ops) out += sandwich(anticommutator(ai, bj), rho.matrix()) * 0.25;
  return out;
}

}  // namespace

DensityMatrix prop1_raw(const KrausChannel &a, const KrausChannel &b, const DensityMatrix &rho) {
  check_pair(a, b, rho);
  ComplexMatrix out = anticommutator_part(a, b, rho);
  for (const auto &ai : a.kraus_ops)
    for (const auto &bj : b.kraus_ops) out += sandwich(commutator(ai, bj), rho.matrix()) * 0.25;
  return DensityMatrix::unchecked(std::move(out));
}

DensityMatrix prop1_average(const KrausChannel &a, const KrausChannel &b, const DensityMatrix &rho) {
  check_pair(a, b, rho);
  ComplexMatrix out(rho.dim(), rho.dim());
  for (const auto &ai : a.kraus_ops)
    for (const auto &bj : b.kraus_ops) {
      out += sandwich(ai * bj, rho.matrix()) * 0.5;
      out += sandwich(bj * ai, rho.matrix()) * 0.5;
    }
  return DensityMatrix::unchecked(std::move(out));
}

Prop1Result prop1_postselected(const KrausChannel &a, const KrausChannel &b, const DensityMatrix &rho) {
  check_pair(a, b, rho);
  ComplexMatrix part = anticommutator_part(a, b, rho);
  const double p = part.trace().real();
  if (p < kPostSelectionFloor) throw PostSelectionError("prop1_postselected: anti-commutator branch has zero weight");
  part *= 1.0 / p;
  return {DensityMatrix::unchecked(std::move(part)), p};
}

}  // namespace circsym
