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

#include "circsym/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace circsym {

namespace states {
ComplexMatrix zero() { return ComplexMatrix{{1.0, 0.0}, {0.0, 0.0}}; }
ComplexMatrix one() { return ComplexMatrix{{0.0, 0.0}, {0.0, 1.0}}; }
ComplexMatrix plus() { return ComplexMatrix{{0.5, 0.5}, {0.5, 0.5}}; }
ComplexMatrix minus() { return ComplexMatrix{{0.5, -0.5}, {-0.5, 0.5}}; }
}  // namespace states

Circuit::Circuit(int num_data_qubits, int num_ancillas) : num_data_(num_data_qubits), num_ancillas_(num_ancillas) {
  if (num_data_qubits < 0 || num_ancillas < 0) throw std::invalid_argument("Circuit: negative qubit count");
  initial_states_.assign(static_cast<std::size_t>(total_qubits()), states::zero());
}

void Circuit::set_initial_state(int qubit, ComplexMatrix rho) {
  if (qubit < 0 || qubit >= total_qubits()) throw std::out_of_range("set_initial_state: qubit out of range");
  DensityMatrix::from_matrix(rho);  // validates
  initial_states_[static_cast<std::size_t>(qubit)] = std::move(rho);
}

void Circuit::set_postselection(int ancilla, int outcome) {
  if (ancilla < num_data_ || ancilla >= total_qubits()) {
    throw std::out_of_range("set_postselection: index is not an ancilla");
  }
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("set_postselection: outcome must be 0 or 1");
  postselect_[ancilla] = outcome;
}

int Circuit::add_ancilla(ComplexMatrix init) {
  DensityMatrix::from_matrix(init);
  ++num_ancillas_;
  initial_states_.push_back(std::move(init));
  return total_qubits() - 1;
}

Moment &Circuit::add_moment() {
  const int t = moments_.empty() ? 0 : moments_.back().time_index + 1;
  moments_.push_back(Moment{t, {}});
  return moments_.back();
}

void Circuit::append(UnitaryGate gate, std::vector<int> qubits, std::optional<NoiseSpec> noise) {
  append(Placement{std::move(gate), std::move(qubits), noise, std::nullopt});
}

void Circuit::append(Placement placement) {
  check_qubits(placement.qubits, placement.gate.arity, total_qubits());
  add_moment().placements.push_back(std::move(placement));
}

void Circuit::append_circuit(const Circuit &other) {
  if (other.total_qubits() > total_qubits()) throw std::invalid_argument("append_circuit: qubit layout mismatch");
  for (const auto &m : other.moments_) add_moment().placements = m.placements;
}

std::vector<int> Circuit::data_qubits() const {
  std::vector<int> q(static_cast<std::size_t>(num_data_));
  for (int i = 0; i < num_data_; ++i) q[static_cast<std::size_t>(i)] = i;
  return q;
}

void Circuit::validate() const {
  int prev = -1;
  for (const auto &m : moments_) {
    if (m.time_index <= prev) throw std::invalid_argument("Circuit: moment time indices must strictly increase");
    prev = m.time_index;
    std::uint64_t used = 0;
    for (const auto &p : m.placements) {
      check_qubits(p.qubits, p.gate.arity, total_qubits());
      for (int q : p.qubits) {
        if (used & (std::uint64_t{1} << q)) {
          throw std::invalid_argument("Circuit: overlapping qubits within moment t=" + std::to_string(m.time_index));
        }
        used |= std::uint64_t{1} << q;
      }
      if (p.channel && p.channel->arity != p.gate.arity) {
        throw std::invalid_argument("Circuit: placement channel arity differs from gate arity");
      }
    }
  }
}

double sof(double p_pass) {
  if (!(p_pass > 0.0 && p_pass <= 1.0 + 1e-12)) {
    throw std::domain_error("sof: pass probability must lie in (0, 1]; overhead is infinite");
  }
  return 1.0 / p_pass - 1.0;
}

std::optional<KrausChannel> placement_noise(const Placement &p, const NoiseSpec &noise) {
  if (p.channel) return p.channel;
  return noise_for_gate(p.noise.value_or(noise), p.gate.arity);
}

namespace {

Superop placement_superop(const Placement &p, const NoiseSpec &noise) {
  Superop s = Superop::from_unitary(p.gate.matrix);
  if (auto ch = placement_noise(p, noise)) s = s.then(Superop::from_kraus(ch->kraus_ops));
  return s;
}

ComplexMatrix initial_joint(const Circuit &c) {
  ComplexMatrix rho = c.initial_state(0);
  for (int q = 1; q < c.total_qubits(); ++q) rho = kron(c.initial_state(q), rho);
  return rho;
}

// Removes bit `bit` from an n-qubit matrix: keeps the outcome block when
// outcome >= 0, otherwise sums both diagonal blocks (partial trace).
ComplexMatrix remove_qubit(const ComplexMatrix &rho, int bit, int outcome) {
  const std::size_t dim = rho.rows();
  const std::size_t half = dim / 2;
  const std::size_t low_mask = (std::size_t{1} << bit) - 1;
  auto expand = [&](std::size_t i, std::size_t b) { return ((i & ~low_mask) << 1) | (b << bit) | (i & low_mask); };
  ComplexMatrix out(half, half);
  for (std::size_t r = 0; r < half; ++r)
    for (std::size_t c = 0; c < half; ++c) {
      if (outcome >= 0) {
        const auto b = static_cast<std::size_t>(outcome);
        out(r, c) = rho(expand(r, b), expand(c, b));
      } else {
        out(r, c) = rho(expand(r, 0), expand(c, 0)) + rho(expand(r, 1), expand(c, 1));
      }
    }
  return out;
}

// Without post-selection nothing can fail, so p_pass is exactly 1 rather
// than a trace carrying round-off.
RunResult finish(ComplexMatrix reduced, bool selective) {
  RunResult result;
  result.p_pass = selective ? reduced.trace().real() : 1.0;
  if (result.p_pass < kPostSelectionFloor) {
    result.p_pass = std::max(result.p_pass, 0.0);
    result.purity = std::numeric_limits<double>::quiet_NaN();
    result.sof = std::numeric_limits<double>::infinity();
    return result;
  }
  reduced *= 1.0 / reduced.trace().real();
  result.rho_data = DensityMatrix::unchecked(std::move(reduced));
  result.purity = purity(*result.rho_data);
  result.sof = sof(std::min(result.p_pass, 1.0));
  return result;
}

}  // namespace

DensityMatrix simulate(const Circuit &c, const NoiseSpec &noise, int max_qubits) {
  noise.validate();
  c.validate();
  if (c.total_qubits() > max_qubits) {
    throw std::invalid_argument("simulate: " + std::to_string(c.total_qubits()) + " qubits exceeds the limit of " +
                                std::to_string(max_qubits));
  }
  if (c.total_qubits() == 0) throw std::invalid_argument("simulate: empty register");
  ComplexMatrix rho = initial_joint(c);
  for (const auto &m : c.moments())
    for (const auto &p : m.placements) placement_superop(p, noise).apply(rho, p.qubits);
  return DensityMatrix::unchecked(std::move(rho));
}

RunResult post_select(const DensityMatrix &joint, const std::map<int, int> &ancilla_outcomes,
                      const std::vector<int> &data_qubits) {
  const int n = joint.num_qubits();
  std::vector<bool> is_data(static_cast<std::size_t>(n), false);
  for (int q : data_qubits) {
    if (q < 0 || q >= n) throw std::out_of_range("post_select: data qubit out of range");
    is_data[static_cast<std::size_t>(q)] = true;
  }
  for (const auto &[a, o] : ancilla_outcomes) {
    if (a < 0 || a >= n || is_data[static_cast<std::size_t>(a)]) {
      throw std::out_of_range("post_select: invalid ancilla index " + std::to_string(a));
    }
    if (o != 0 && o != 1) throw std::invalid_argument("post_select: outcome must be 0 or 1");
  }
  // Remove the highest non-data qubits first so lower bit positions stay put.
  ComplexMatrix rho = joint.matrix();
  for (int q = n - 1; q >= 0; --q) {
    if (is_data[static_cast<std::size_t>(q)]) continue;
    auto it = ancilla_outcomes.find(q);
    rho = remove_qubit(rho, q, it == ancilla_outcomes.end() ? -1 : it->second);
  }
  // Remaining bits are the data qubits in ascending order; reorder to the
  // requested order.
  std::vector<int> sorted = data_qubits;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != data_qubits) {
    std::vector<int> keep;
    for (int q : data_qubits)
      keep.push_back(static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), q) - sorted.begin()));
    rho = partial_trace(DensityMatrix::unchecked(std::move(rho)), keep).matrix();
  }
  return finish(std::move(rho), !ancilla_outcomes.empty());
}

RunResult post_select(const DensityMatrix &joint, const Circuit &c) {
  return post_select(joint, c.postselection(), c.data_qubits());
}

RunResult run_postselected(const Circuit &c, const NoiseSpec &noise, int max_live_qubits) {
  noise.validate();
  c.validate();
  const int total = c.total_qubits();
  const int nd = c.num_data_qubits();
  if (nd == 0) throw std::invalid_argument("run_postselected: no data qubits");

  // Flattened placement order and per-ancilla lifetimes.
  std::vector<const Placement *> order;
  for (const auto &m : c.moments())
    for (const auto &p : m.placements) order.push_back(&p);
  std::vector<int> first(static_cast<std::size_t>(total), -1), last(static_cast<std::size_t>(total), -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i)
    for (int q : order[static_cast<std::size_t>(i)]->qubits) {
      if (first[static_cast<std::size_t>(q)] < 0) first[static_cast<std::size_t>(q)] = i;
      last[static_cast<std::size_t>(q)] = i;
    }

  ComplexMatrix rho = c.initial_state(0);
  for (int q = 1; q < nd; ++q) rho = kron(c.initial_state(q), rho);
  std::vector<int> position(static_cast<std::size_t>(total), -1);  // logical -> bit
  std::vector<int> live;                                           // bit -> logical
  for (int q = 0; q < nd; ++q) {
    position[static_cast<std::size_t>(q)] = q;
    live.push_back(q);
  }

  double idle_factor = 1.0;
  for (int a = nd; a < total; ++a) {
    if (first[static_cast<std::size_t>(a)] >= 0) continue;
    auto it = c.postselection().find(a);
    if (it != c.postselection().end()) {
      const auto o = static_cast<std::size_t>(it->second);
      idle_factor *= c.initial_state(a)(o, o).real();
    }
  }

  std::vector<int> mapped;
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    const Placement &p = *order[static_cast<std::size_t>(i)];
    for (int q : p.qubits) {
      if (position[static_cast<std::size_t>(q)] >= 0) continue;
      if (static_cast<int>(live.size()) + 1 > max_live_qubits) {
        throw std::invalid_argument("run_postselected: more than " + std::to_string(max_live_qubits) +
                                    " simultaneously live qubits");
      }
      rho = kron(c.initial_state(q), rho);
      position[static_cast<std::size_t>(q)] = static_cast<int>(live.size());
      live.push_back(q);
    }
    mapped.clear();
    for (int q : p.qubits) mapped.push_back(position[static_cast<std::size_t>(q)]);
    placement_superop(p, noise).apply(rho, mapped);

    for (int q : p.qubits) {
      if (q < nd || last[static_cast<std::size_t>(q)] != i) continue;
      const int bit = position[static_cast<std::size_t>(q)];
      auto it = c.postselection().find(q);
      rho = remove_qubit(rho, bit, it == c.postselection().end() ? -1 : it->second);
      live.erase(live.begin() + bit);
      position[static_cast<std::size_t>(q)] = -1;
      for (std::size_t b = static_cast<std::size_t>(bit); b < live.size(); ++b)
        position[static_cast<std::size_t>(live[b])] = static_cast<int>(b);
    }
  }
  rho *= idle_factor;
  return finish(std::move(rho), !c.postselection().empty());
}

void append_with_fresh_ancillas(Circuit &dst, const Circuit &src) {
  if (src.num_data_qubits() != dst.num_data_qubits()) {
    throw std::invalid_argument("append_with_fresh_ancillas: data registers differ");
  }
  const int nd = src.num_data_qubits();
  std::vector<int> map(static_cast<std::size_t>(src.total_qubits()));
  for (int q = 0; q < nd; ++q) map[static_cast<std::size_t>(q)] = q;
  for (int a = nd; a < src.total_qubits(); ++a) {
    map[static_cast<std::size_t>(a)] = dst.add_ancilla(src.initial_state(a));
    auto it = src.postselection().find(a);
    if (it != src.postselection().end()) dst.set_postselection(map[static_cast<std::size_t>(a)], it->second);
  }
  for (const auto &m : src.moments()) {
    Moment &out = dst.add_moment();
    for (Placement p : m.placements) {
      for (int &q : p.qubits) q = map[static_cast<std::size_t>(q)];
      out.placements.push_back(std::move(p));
    }
  }
}

ComplexMatrix placement_unitary(const Placement &p, int num_qubits) {
  return embed(p.gate.matrix, p.qubits, num_qubits);
}

KrausChannel channel_of(const Circuit &c, const NoiseSpec &noise, int max_qubits) {
  noise.validate();
  c.validate();
  const int n = c.total_qubits();
  if (n > max_qubits) {
    throw std::invalid_argument("channel_of: " + std::to_string(n) + " qubits exceeds the oracle limit of " +
                                std::to_string(max_qubits));
  }
  constexpr std::size_t kMaxKraus = 1u << 14;
  std::vector<ComplexMatrix> ops{ComplexMatrix::identity(std::size_t{1} << n)};
  for (const auto &m : c.moments())
    for (const auto &p : m.placements) {
      const ComplexMatrix u = placement_unitary(p, n);
      for (auto &k : ops) k = u * k;
      if (auto ch = placement_noise(p, noise)) {
        std::vector<ComplexMatrix> next;
        for (const auto &e : ch->kraus_ops) {
          const ComplexMatrix big = embed(e, p.qubits, n);
          for (const auto &k : ops) {
            ComplexMatrix prod = big * k;
            if (frobenius_norm(prod) > 1e-14) next.push_back(std::move(prod));
          }
        }
        if (next.size() > kMaxKraus) throw std::invalid_argument("channel_of: too many Kraus operators");
        ops = std::move(next);
      }
    }
  return KrausChannel(n, std::move(ops));
}

ComplexMatrix circuit_unitary(const Circuit &c, int from, int to) {
  const int n = c.total_qubits();
  if (to < 0) to = c.num_moments();
  if (from < 0 || from > to || to > c.num_moments()) throw std::out_of_range("circuit_unitary: bad moment range");
  ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << n);
  for (int t = from; t < to; ++t)
    for (const auto &p : c.moments()[static_cast<std::size_t>(t)].placements) u = placement_unitary(p, n) * u;
  return u;
}

}  // namespace circsym
