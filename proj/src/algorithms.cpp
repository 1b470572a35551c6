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

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace circsym {

Circuit rotation_chain(int n_gates, double theta) {
  if (n_gates < 1) throw std::invalid_argument("rotation_chain: need at least one gate");
  Circuit c(1);
  for (int i = 0; i < n_gates; ++i) c.append(gates::rx(theta), {0});
  return c;
}

Circuit xrotation_network(const std::vector<double> &angles) {
  if (angles.size() != 9) throw std::invalid_argument("xrotation_network: expected 9 angles");
  Circuit c(4);
  auto &m0 = c.add_moment();
  for (int q = 0; q < 4; ++q) m0.placements.push_back({gates::rx(angles[static_cast<std::size_t>(q)]), {q}, {}, {}});
  auto &m1 = c.add_moment();
  m1.placements.push_back({gates::rxx(angles[4]), {0, 1}, {}, {}});
  m1.placements.push_back({gates::rxx(angles[5]), {2, 3}, {}, {}});
  auto &m2 = c.add_moment();
  m2.placements.push_back({gates::rxx(angles[6]), {1, 2}, {}, {}});
  m2.placements.push_back({gates::rx(angles[7]), {0}, {}, {}});
  m2.placements.push_back({gates::rx(angles[8]), {3}, {}, {}});
  return c;
}

Circuit xrotation_network_hadamard(const std::vector<double> &angles) {
  Circuit c = xrotation_network(angles);
  auto &m = c.add_moment();
  for (int q = 0; q < 4; ++q) m.placements.push_back({gates::h(), {q}, {}, {}});
  return c;
}

Circuit qft_circuit(int n) {
  if (n < 2) throw std::invalid_argument("qft_circuit: need at least 2 qubits");
  Circuit c(n);
  for (int j = 0; j < n; ++j) {
    c.append(gates::h(), {j});
    for (int k = j + 1; k < n; ++k) c.append(controlled(gates::rn(k - j + 1)), {j, k});
  }
  return c;
}

QftQubitTimes qft_times(int n, int j) {
  if (j < 0 || j >= n) throw std::out_of_range("qft_times: qubit out of range");
  // Block j' occupies moments [start(j'), start(j') + n - j').
  auto start = [n](int jj) { return jj * n - jj * (jj - 1) / 2; };
  QftQubitTimes t{};
  t.hadamard = start(j);
  // Before H_j, qubit j controls the rotation onto every earlier target.
  t.first = j == 0 ? start(0) : start(0) + j;
  t.last = start(j) + (n - j);
  return t;
}

std::vector<CheckSpec> qft_sts(int n) {
  std::vector<CheckSpec> checks;
  for (int j = 0; j < n; ++j) {
    const auto t = qft_times(n, j);
    std::vector<STSComponent> comps = {
        {PauliString({{j, 'Z'}}), t.first},
        {PauliString::parse(fmt::format("-iY{}", j)), t.hadamard},
        {PauliString({{j, 'Z'}}), t.last},
    };
    checks.push_back(CheckSpec{STSDescriptor::normalized(std::move(comps)), 1, std::nullopt, true});
  }
  return checks;
}

// ---------------------------------------------------------------------------
// QUBO

void QuboInstance::validate() const {
  if (n < 1) throw std::invalid_argument("QUBO: n must be positive");
  if (a.size() != static_cast<std::size_t>(n * n) || b.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("QUBO: coefficient sizes do not match n");
  }
  for (int i = 0; i < n; ++i) {
    if (coupling(i, i) != 0.0) throw std::invalid_argument("QUBO: diagonal of A must be zero");
    for (int j = 0; j < n; ++j)
      if (std::abs(coupling(i, j) - coupling(j, i)) > 1e-12) throw std::invalid_argument("QUBO: A must be symmetric");
  }
}

double QuboInstance::objective(const std::vector<int> &x) const {
  if (x.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("QUBO: wrong assignment length");
  double f = 0;
  for (int i = 0; i < n; ++i) {
    f += b[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) f += coupling(i, j) * x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)];
  }
  return f;
}

QuboInstance QuboInstance::parse(std::string_view text) {
  QuboInstance q;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string &msg) {
    throw std::invalid_argument(fmt::format("QUBO line {}: {}", line_no, msg));
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head.starts_with("n=")) {
      if (q.n != 0) fail("duplicate n=");
      try {
        q.n = std::stoi(head.substr(2));
      } catch (const std::logic_error &) {
        fail("bad n");
      }
      if (q.n < 1) fail("n must be positive");
      q.a.assign(static_cast<std::size_t>(q.n * q.n), 0.0);
      q.b.assign(static_cast<std::size_t>(q.n), 0.0);
      continue;
    }
    if (q.n == 0) fail("missing n= header");
    int i = 0, j = 0;
    double v = 0;
    std::string rest;
    if (head == "a") {
      if (!(ls >> i >> j >> v) || (ls >> rest)) fail("expected 'a i j value'");
      if (i < 0 || j < 0 || i >= q.n || j >= q.n) fail("index out of range");
      if (i == j) fail("diagonal couplings are not allowed");
      q.a[static_cast<std::size_t>(i * q.n + j)] = v;
      q.a[static_cast<std::size_t>(j * q.n + i)] = v;
    } else if (head == "b") {
      if (!(ls >> i >> v) || (ls >> rest)) fail("expected 'b i value'");
      if (i < 0 || i >= q.n) fail("index out of range");
      q.b[static_cast<std::size_t>(i)] = v;
    } else {
      fail("unrecognised line");
    }
  }
  if (q.n == 0) throw std::invalid_argument("QUBO: missing n= header");
  return q;
}

QuboInstance QuboInstance::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open QUBO file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

QuboInstance QuboInstance::random(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("QUBO: n must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  QuboInstance q;
  q.n = n;
  q.a.assign(static_cast<std::size_t>(n * n), 0.0);
  q.b.assign(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = u(rng);
      q.a[static_cast<std::size_t>(i * n + j)] = v;
      q.a[static_cast<std::size_t>(j * n + i)] = v;
    }
  for (int i = 0; i < n; ++i) q.b[static_cast<std::size_t>(i)] = u(rng);
  return q;
}

QaoaHamiltonians qaoa_hamiltonians(const QuboInstance &q) {
  q.validate();
  if (q.n > 10) throw std::invalid_argument("qaoa_hamiltonians: dense form limited to 10 qubits");
  const std::size_t d = std::size_t{1} << q.n;
  std::vector<Complex> even(d), odd(d);
  for (std::size_t x = 0; x < d; ++x) {
    auto z = [x](int i) { return ((x >> i) & 1u) ? -1.0 : 1.0; };
    for (int i = 0; i < q.n; ++i) {
      odd[x] += q.b[static_cast<std::size_t>(i)] * z(i);
      for (int j = 0; j < q.n; ++j)
        if (i != j) even[x] += q.coupling(i, j) * z(i) * z(j);
    }
  }
  ComplexMatrix mixer(d, d);
  for (int i = 0; i < q.n; ++i) {
    const std::vector<int> qi{i};
    mixer += embed(pauli_x(), qi, q.n);
  }
  return {ComplexMatrix::diagonal(even), ComplexMatrix::diagonal(odd), std::move(mixer)};
}

std::string_view to_string(Protection p) {
  switch (p) {
    case Protection::kNone:
      return "none";
    case Protection::kStsSingle:
      return "sts_single";
    case Protection::kStsCat2:
      return "sts_cat2";
  }
  return "none";
}

QaoaStage qaoa_stage(const QuboInstance &q, double beta, double gamma) {
  q.validate();
  QaoaStage s{Circuit(q.n), 0, 0, 0, 0, 0, {}, {}};
  Circuit &c = s.circuit;
  s.b0 = 0;
  auto &odd = c.add_moment();
  for (int i = 0; i < q.n; ++i) odd.placements.push_back({gates::rz(2 * q.b[static_cast<std::size_t>(i)] * gamma), {i}, {}, {}});
  s.b1 = c.num_moments();
  for (int i = 0; i < q.n; ++i)
    for (int j = i + 1; j < q.n; ++j)
      if (q.coupling(i, j) != 0.0) c.append(gates::rzz(4 * q.coupling(i, j) * gamma), {i, j});
  s.b2 = c.num_moments();
  if (q.n % 2 == 1) c.add_moment();
  s.after_barrier = c.num_moments();
  auto &mix = c.add_moment();
  for (int i = 0; i < q.n; ++i) mix.placements.push_back({gates::rx(2 * beta), {i}, {}, {}});
  s.b3 = c.num_moments();

  std::vector<int> all(static_cast<std::size_t>(q.n));
  for (int i = 0; i < q.n; ++i) all[static_cast<std::size_t>(i)] = i;
  s.even_placement_sts = {STSDescriptor::uniform('Z', all, {s.b0, s.b2}),
                          STSDescriptor::uniform('X', all, {s.b1, s.b3})};
  if (q.n % 2 == 0) {
    s.sts = s.even_placement_sts;
  } else {
    s.sts = {STSDescriptor::uniform('Z', all, {s.b0, s.after_barrier}), STSDescriptor::uniform('X', all, {s.b1, s.b2})};
  }
  return s;
}

QaoaParams QaoaParams::random(int stages, std::uint64_t seed) {
  if (stages < 1) throw std::invalid_argument("QaoaParams: need at least one stage");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
  QaoaParams p;
  for (int i = 0; i < stages; ++i) {
    p.beta.push_back(u(rng));
    p.gamma.push_back(u(rng));
  }
  return p;
}

Circuit qaoa_circuit(const QuboInstance &q, const QaoaParams &params, Protection protection,
                     std::optional<NoiseSpec> check_noise) {
  if (params.beta.size() != params.gamma.size() || params.beta.empty()) {
    throw std::invalid_argument("qaoa_circuit: beta and gamma must have the same nonzero length");
  }
  Circuit c(q.n);
  auto &init = c.add_moment();
  for (int i = 0; i < q.n; ++i) init.placements.push_back({gates::h(), {i}, {}, {}});
  for (int p = 0; p < params.stages(); ++p) {
    QaoaStage stage = qaoa_stage(q, params.beta[static_cast<std::size_t>(p)], params.gamma[static_cast<std::size_t>(p)]);
    if (protection == Protection::kNone) {
      c.append_circuit(stage.circuit);
      continue;
    }
    const int anc = protection == Protection::kStsCat2 ? 2 : 1;
    std::vector<CheckSpec> checks;
    for (const auto &s : stage.sts) checks.push_back(CheckSpec{s, anc, check_noise, true});
    append_with_fresh_ancillas(c, instrument(stage.circuit, checks));
  }
  return c;
}

}  // namespace circsym
