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

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <functional>
#include <random>
#include <stdexcept>

namespace circsym {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

UnitaryGate phased_pauli_gate(char pauli, int phase_power) {
  static const char *kPrefix[] = {"", "i", "-", "-i"};
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(pauli)));
  return gate_library(std::string(kPrefix[phase_power]) + lower);
}

UnitaryGate phase_gate(int phase_power) {
  static const Complex kPhases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex d[] = {1.0, kPhases[phase_power]};
  return UnitaryGate("phase", ComplexMatrix::diagonal(d));
}

// Placement of controlled-P for one Pauli factor, control as last qubit.
Placement controlled_factor(char pauli, int phase_power, int qubit, int control, const std::optional<NoiseSpec> &noise) {
  return Placement{controlled(phased_pauli_gate(pauli, phase_power)), {qubit, control}, noise, std::nullopt};
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors

STSDescriptor STSDescriptor::parse(std::string_view text) {
  std::string_view body = trim(text);
  if (!body.starts_with("S{") || !body.ends_with("}")) {
    throw std::invalid_argument("STS descriptor must look like S{ X0@0, ... }");
  }
  body = trim(body.substr(2, body.size() - 3));
  std::vector<STSComponent> comps;
  std::size_t start = 0;
  while (!body.empty() && start <= body.size()) {
    auto end = body.find(',', start);
    if (end == std::string_view::npos) end = body.size();
    std::string_view entry = trim(body.substr(start, end - start));
    start = end + 1;
    auto at = entry.find('@');
    if (at == std::string_view::npos) throw std::invalid_argument("STS entry '" + std::string(entry) + "' lacks @time");
    std::string time_text(trim(entry.substr(at + 1)));
    std::size_t used = 0;
    int t = 0;
    try {
      t = std::stoi(time_text, &used);
    } catch (const std::logic_error &) {
      used = 0;
    }
    if (used == 0 || used != time_text.size()) throw std::invalid_argument("STS entry has bad time '" + time_text + "'");
    comps.push_back({PauliString::parse(entry.substr(0, at)), t});
    if (end == body.size()) break;
  }
  auto s = normalized(std::move(comps));
  s.validate();
  return s;
}

STSDescriptor STSDescriptor::normalized(std::vector<STSComponent> components) {
  std::stable_sort(components.begin(), components.end(),
                   [](const STSComponent &a, const STSComponent &b) { return a.time < b.time; });
  STSDescriptor out;
  for (auto &c : components) {
    if (!out.components.empty() && out.components.back().time == c.time) {
      out.components.back().op = c.op * out.components.back().op;
    } else {
      out.components.push_back(std::move(c));
    }
  }
  std::erase_if(out.components, [](const STSComponent &c) { return c.op.is_identity() && c.op.phase_power() == 0; });
  return out;
}

STSDescriptor STSDescriptor::uniform(char pauli, const std::vector<int> &qubits, const std::vector<int> &times) {
  std::vector<STSComponent> comps;
  for (int t : times) comps.push_back({PauliString::uniform(pauli, qubits), t});
  STSDescriptor s{std::move(comps)};
  s.validate();
  return s;
}

std::string STSDescriptor::to_string() const {
  static const char *kPrefix[] = {"", "i", "-", "-i"};
  std::string out = "S{";
  bool first = true;
  for (const auto &c : components) {
    auto emit = [&](const std::string &s) {
      out += first ? " " : ", ";
      first = false;
      out += fmt::format("{}@{}", s, c.time);
    };
    if (c.op.is_identity()) {
      emit(std::string(kPrefix[c.op.phase_power()]) + "I");
      continue;
    }
    bool lead = true;
    for (const auto &[q, p] : c.op.factors()) {
      emit(fmt::format("{}{}{}", lead ? kPrefix[c.op.phase_power()] : "", p, q));
      lead = false;
    }
  }
  return out + (first ? "}" : " }");
}

void STSDescriptor::validate() const {
  int prev = 0;
  for (const auto &c : components) {
    if (c.time < 0) throw std::invalid_argument("STS: negative time index");
    if (c.time < prev) throw std::invalid_argument("STS: time indices must be non-decreasing");
    prev = c.time;
  }
}

int STSDescriptor::max_time() const { return components.empty() ? 0 : components.back().time; }
int STSDescriptor::min_time() const { return components.empty() ? 0 : components.front().time; }

int STSDescriptor::num_factors() const {
  int n = 0;
  for (const auto &c : components) n += c.op.weight();
  return n;
}

ActionScope action_scope(const STSDescriptor &s) {
  ActionScope scope;
  for (const auto &c : s.components)
    for (int q : c.op.support()) scope.spatial.insert(q);
  scope.t_min = s.min_time();
  scope.t_max = s.max_time();
  return scope;
}

bool scopes_disjoint(const ActionScope &a, const ActionScope &b) {
  if (a.t_max < b.t_min || b.t_max < a.t_min) return true;
  for (int q : a.spatial)
    if (b.spatial.count(q)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Circuit-STS check

namespace {

void check_fits(const Circuit &c, const STSDescriptor &s) {
  s.validate();
  for (const auto &comp : s.components) {
    if (comp.time > c.num_moments()) {
      throw std::out_of_range(fmt::format("STS time {} beyond circuit end {}", comp.time, c.num_moments()));
    }
    if (comp.op.max_qubit() >= c.num_data_qubits()) throw std::out_of_range("STS acts outside the data register");
  }
}

}  // namespace

bool is_circuit_sts(const Circuit &c, const STSDescriptor &s, bool phase_sensitive) {
  check_fits(c, s);
  const int n = c.total_qubits();
  if (n > 6) throw std::invalid_argument("is_circuit_sts: more than 6 qubits");
  const std::size_t d = std::size_t{1} << n;
  ComplexMatrix w = ComplexMatrix::identity(d);
  std::size_t next = 0;
  for (int t = 0; t <= c.num_moments(); ++t) {
    while (next < s.components.size() && s.components[next].time == t) w = s.components[next++].op.matrix(n) * w;
    if (t == c.num_moments()) break;
    for (const auto &p : c.moments()[static_cast<std::size_t>(t)].placements) w = placement_unitary(p, n) * w;
  }
  const ComplexMatrix u = circuit_unitary(c);
  return phase_sensitive ? max_abs_diff(w, u) < 1e-10 : equal_up_to_phase(w, u, 1e-10);
}

// ---------------------------------------------------------------------------
// Instrumentation

Circuit instrument(const Circuit &c, const std::vector<CheckSpec> &checks) {
  Circuit out(c.num_data_qubits(), c.num_ancillas());
  for (int q = 0; q < c.total_qubits(); ++q) out.set_initial_state(q, c.initial_state(q));
  for (const auto &[a, o] : c.postselection()) out.set_postselection(a, o);

  std::vector<std::vector<int>> ancillas;
  for (const auto &chk : checks) {
    check_fits(c, chk.sts);
    if (chk.num_ancillas < 1) throw std::invalid_argument("instrument: need at least one ancilla per check");
    if (chk.num_ancillas > 1 && chk.num_ancillas > chk.sts.num_factors()) {
      throw std::invalid_argument(fmt::format("instrument: cat state of {} ancillas exceeds the {} Pauli factors",
                                              chk.num_ancillas, chk.sts.num_factors()));
    }
    std::vector<int> a;
    for (int i = 0; i < chk.num_ancillas; ++i) {
      a.push_back(out.add_ancilla());
      out.set_postselection(a.back(), 0);
    }
    ancillas.push_back(std::move(a));
  }

  auto prepare = [&](const CheckSpec &chk, const std::vector<int> &a) {
    if (!chk.enabled) return;
    out.append(Placement{gates::h(), {a[0]}, chk.noise, std::nullopt});
    for (std::size_t i = 1; i < a.size(); ++i) out.append(Placement{gates::cnot(), {a[i], a[i - 1]}, chk.noise, std::nullopt});
  };
  auto release = [&](const CheckSpec &chk, const std::vector<int> &a) {
    if (!chk.enabled) return;
    for (std::size_t i = a.size(); i-- > 1;) out.append(Placement{gates::cnot(), {a[i], a[i - 1]}, chk.noise, std::nullopt});
    out.append(Placement{gates::h(), {a[0]}, chk.noise, std::nullopt});
  };
  auto apply_component = [&](const CheckSpec &chk, const std::vector<int> &a, const PauliString &op) {
    if (op.is_identity()) {
      if (op.phase_power() != 0) out.append(Placement{phase_gate(op.phase_power()), {a[0]}, chk.noise, std::nullopt});
      return;
    }
    const auto &factors = op.factors();
    const std::size_t n = factors.size(), k = a.size();
    std::size_t idx = 0;
    for (const auto &[q, p] : factors) {
      // Contiguous chunks whose sizes differ by at most one.
      const std::size_t owner = std::min(k - 1, (idx * k) / n);
      out.append(controlled_factor(p, idx == 0 ? op.phase_power() : 0, q, a[owner], chk.noise));
      ++idx;
    }
  };

  for (int t = 0; t <= c.num_moments(); ++t) {
    for (std::size_t k = 0; k < checks.size(); ++k) {
      const auto &chk = checks[k];
      if (chk.sts.components.empty()) {
        if (t == 0) {
          prepare(chk, ancillas[k]);
          release(chk, ancillas[k]);
        }
        continue;
      }
      if (t == chk.sts.min_time()) prepare(chk, ancillas[k]);
      for (const auto &comp : chk.sts.components)
        if (comp.time == t) apply_component(chk, ancillas[k], comp.op);
      if (t == chk.sts.max_time()) release(chk, ancillas[k]);
    }
    if (t < c.num_moments()) out.add_moment().placements = c.moments()[static_cast<std::size_t>(t)].placements;
  }
  return out;
}

Circuit instrument(const Circuit &c, const STSDescriptor &s, int num_ancillas, std::optional<NoiseSpec> check_noise) {
  return instrument(c, std::vector<CheckSpec>{CheckSpec{s, num_ancillas, check_noise, true}});
}

// ---------------------------------------------------------------------------
// Simultaneous observability

namespace {

std::vector<std::vector<ComplexMatrix>> probe_inputs(int num_qubits) {
  const std::vector<ComplexMatrix> basis = {
      states::zero(), states::one(), states::plus(), ComplexMatrix{{0.5, Complex(0, -0.5)}, {Complex(0, 0.5), 0.5}}};
  std::vector<std::vector<ComplexMatrix>> probes;
  if (num_qubits <= 4) {
    std::size_t total = std::size_t{1} << (2 * num_qubits);
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<ComplexMatrix> p;
      for (int q = 0; q < num_qubits; ++q) p.push_back(basis[(code >> (2 * q)) & 3]);
      probes.push_back(std::move(p));
    }
    return probes;
  }
  std::mt19937_64 rng(0x5151);
  std::normal_distribution<double> g;
  for (int i = 0; i < 24; ++i) {
    std::vector<ComplexMatrix> p;
    for (int q = 0; q < num_qubits; ++q) {
      Complex a(g(rng), g(rng)), b(g(rng), g(rng));
      const double norm = std::sqrt(std::norm(a) + std::norm(b));
      a /= norm;
      b /= norm;
      p.push_back(ComplexMatrix{{a * std::conj(a), a * std::conj(b)}, {b * std::conj(a), b * std::conj(b)}});
    }
    probes.push_back(std::move(p));
  }
  return probes;
}

}  // namespace

bool simultaneous_observable(const Circuit &c, const std::vector<STSDescriptor> &s_list) {
  const int k = static_cast<int>(s_list.size());
  if (k > 4) throw std::invalid_argument("simultaneous_observable: more than 4 descriptors");
  if (c.total_qubits() + k > 10 || c.num_data_qubits() > 6) {
    throw std::invalid_argument("simultaneous_observable: circuit too large for the definition-based check");
  }
  const auto probes = probe_inputs(c.num_data_qubits());
  std::vector<RunResult> baseline;
  for (int mask = 0; mask < (1 << k); ++mask) {
    std::vector<CheckSpec> checks;
    for (int i = 0; i < k; ++i)
      checks.push_back(CheckSpec{s_list[static_cast<std::size_t>(i)], 1, NoiseSpec::none(), ((mask >> i) & 1) != 0});
    Circuit inst = instrument(c, checks);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      for (int q = 0; q < c.num_data_qubits(); ++q) inst.set_initial_state(q, probes[p][static_cast<std::size_t>(q)]);
      RunResult r = run_postselected(inst, NoiseSpec::none());
      if (!r.passes()) return false;
      if (mask == 0) {
        baseline.push_back(std::move(r));
        continue;
      }
      if (std::abs(r.p_pass - baseline[p].p_pass) > 1e-10) return false;
      if (max_abs_diff(r.rho_data->matrix(), baseline[p].rho_data->matrix()) > 1e-10) return false;
    }
  }
  return true;
}

bool suff_disjoint(const std::vector<STSDescriptor> &s_list) {
  std::vector<ActionScope> scopes;
  for (const auto &s : s_list) scopes.push_back(action_scope(s));
  for (std::size_t i = 0; i < scopes.size(); ++i)
    for (std::size_t j = i + 1; j < scopes.size(); ++j)
      if (!scopes_disjoint(scopes[i], scopes[j])) return false;
  return true;
}

bool suff_timeshift(const Circuit &c, const std::vector<STSDescriptor> &s_list) {
  const int horizon = c.num_moments();
  // Every placement of each descriptor's components that is still a circuit
  // STS.
  std::vector<std::vector<STSDescriptor>> variants(s_list.size());
  for (std::size_t i = 0; i < s_list.size(); ++i) {
    const auto &s = s_list[i];
    check_fits(c, s);
    const std::size_t m = s.components.size();
    std::vector<int> times(m, 0);
    std::function<void(std::size_t, int)> place = [&](std::size_t j, int lo) {
      if (j == m) {
        STSDescriptor moved = s;
        for (std::size_t x = 0; x < m; ++x) moved.components[x].time = times[x];
        if (moved == s || is_circuit_sts(c, moved, true)) variants[i].push_back(std::move(moved));
        return;
      }
      for (int t = lo; t <= horizon; ++t) {
        times[j] = t;
        place(j + 1, t);
      }
    };
    place(0, 0);
    if (variants[i].empty()) return false;
  }

  // Components of different descriptors whose execution order flips must
  // commute. Equal times execute in list order.
  auto crossing_ok = [&](std::size_t i, const STSDescriptor &vi, std::size_t j, const STSDescriptor &vj) {
    const auto &oi = s_list[i].components, &oj = s_list[j].components;
    for (std::size_t x = 0; x < oi.size(); ++x)
      for (std::size_t y = 0; y < oj.size(); ++y) {
        const bool before_old = std::pair(oi[x].time, i) < std::pair(oj[y].time, j);
        const bool before_new = std::pair(vi.components[x].time, i) < std::pair(vj.components[y].time, j);
        if (before_old != before_new && !oi[x].op.commutes_with(oj[y].op)) return false;
      }
    return true;
  };

  std::vector<const STSDescriptor *> chosen;
  std::function<bool(std::size_t)> search = [&](std::size_t i) {
    if (i == variants.size()) return true;
    for (const auto &v : variants[i]) {
      const ActionScope scope = action_scope(v);
      bool ok = true;
      for (std::size_t j = 0; j < chosen.size() && ok; ++j)
        ok = scopes_disjoint(action_scope(*chosen[j]), scope) && crossing_ok(j, *chosen[j], i, v);
      if (!ok) continue;
      chosen.push_back(&v);
      if (search(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return search(0);
}

bool compatible_pair(const STSDescriptor &a, const STSDescriptor &b) {
  if (a.components.empty() || b.components.empty()) return true;
  // Positions are (time, list rank); `a` precedes `b` at equal times.
  auto inside = [](int t, int rank, const STSDescriptor &w, int w_rank) {
    const std::pair<int, int> p{t, rank}, lo{w.min_time(), w_rank}, hi{w.max_time(), w_rank};
    return lo < p && p < hi;
  };
  std::vector<const PauliString *> a_in_b, b_in_a;
  for (const auto &x : a.components)
    if (inside(x.time, 0, b, 1)) a_in_b.push_back(&x.op);
  for (const auto &y : b.components)
    if (inside(y.time, 1, a, 0)) b_in_a.push_back(&y.op);
  if (a_in_b.empty() || b_in_a.empty()) return true;
  for (const auto *x : a_in_b)
    for (const auto &y : b.components)
      if (!x->commutes_with(y.op)) return false;
  for (const auto *y : b_in_a)
    for (const auto &x : a.components)
      if (!y->commutes_with(x.op)) return false;
  return true;
}

STSDescriptor combine(const std::vector<STSDescriptor> &s_list, const Circuit *c) {
  if (s_list.empty()) throw std::invalid_argument("combine: nothing to combine");
  for (const auto &s : s_list) s.validate();
  if (c) {
    if (!simultaneous_observable(*c, s_list)) throw std::invalid_argument("combine: STSs are not simultaneously observable");
  } else {
    for (std::size_t i = 0; i < s_list.size(); ++i)
      for (std::size_t j = i + 1; j < s_list.size(); ++j)
        if (!compatible_pair(s_list[i], s_list[j])) {
          throw std::invalid_argument(fmt::format("combine: STS {} and {} are not simultaneously observable", i, j));
        }
  }
  std::vector<STSComponent> all;
  for (const auto &s : s_list) all.insert(all.end(), s.components.begin(), s.components.end());
  return STSDescriptor::normalized(std::move(all));
}

}  // namespace circsym
