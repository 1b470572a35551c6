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


#include "circsym/circuit_io.hpp"

#include <fmt/format.h>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace circsym {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

[[noreturn]] void fail(int line, const std::string &msg) {
  throw std::invalid_argument(fmt::format("circuit line {}: {}", line, msg));
}

int parse_int(std::string_view s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(std::string(s), &used);
    if (used != s.size()) fail(line, "bad integer '" + std::string(s) + "'");
    return v;
  } catch (const std::logic_error &) {
    fail(line, "bad integer '" + std::string(s) + "'");
  }
}

double parse_double(std::string_view s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(std::string(s), &used);
    if (used != s.size()) fail(line, "bad number '" + std::string(s) + "'");
    return v;
  } catch (const std::logic_error &) {
    fail(line, "bad number '" + std::string(s) + "'");
  }
}

int parse_qubit(std::string_view s, int line) {
  if (s.size() < 2 || s[0] != 'q') fail(line, "expected q<index>, got '" + std::string(s) + "'");
  return parse_int(s.substr(1), line);
}

ComplexMatrix named_state(std::string_view name, int line) {
  if (name == "zero") return states::zero();
  if (name == "one") return states::one();
  if (name == "plus") return states::plus();
  if (name == "minus") return states::minus();
  fail(line, "unknown initial state '" + std::string(name) + "'");
}

Placement parse_placement(std::string_view text, int line) {
  auto tokens = split_ws(text);
  if (tokens.size() < 2 || tokens.size() > 3) fail(line, "expected '<gate> <qubits> [noise=...]'");
  std::string_view head = tokens[0];
  std::vector<double> params;
  if (auto open = head.find('('); open != std::string_view::npos) {
    if (head.back() != ')') fail(line, "unterminated parameter list");
    auto inner = head.substr(open + 1, head.size() - open - 2);
    if (!trim(inner).empty())
      for (auto p : split(inner, ',')) params.push_back(parse_double(p, line));
    head = head.substr(0, open);
  }
  Placement pl{[&] {
                 try {
                   return gate_library(head, params);
                 } catch (const std::invalid_argument &e) {
                   fail(line, e.what());
                 }
               }(),
               {},
               std::nullopt,
               std::nullopt};
  for (auto q : split(tokens[1], ',')) pl.qubits.push_back(parse_qubit(q, line));
  if (tokens.size() == 3) {
    auto n = tokens[2];
    if (!n.starts_with("noise=")) fail(line, "expected noise=<kind>,<rate>");
    n.remove_prefix(6);
    if (n == "none") {
      pl.noise = NoiseSpec::none();
    } else {
      auto parts = split(n, ',');
      if (parts.size() != 2) fail(line, "expected noise=<kind>,<rate>");
      NoiseSpec spec;
      try {
        spec.kind = parse_channel_kind(parts[0]);
      } catch (const std::invalid_argument &e) {
        fail(line, e.what());
      }
      spec.one_qubit_rate = spec.two_qubit_rate = parse_double(parts[1], line);
      try {
        spec.validate();
      } catch (const std::invalid_argument &e) {
        fail(line, e.what());
      }
      pl.noise = spec;
    }
  }
  return pl;
}

std::string format_params(const std::vector<double> &params) {
  if (params.empty()) return "";
  std::string s = "(";
  for (std::size_t i = 0; i < params.size(); ++i) s += fmt::format("{}{:.17g}", i ? "," : "", params[i]);
  return s + ")";
}

std::string state_name(const ComplexMatrix &m) {
  for (const char *name : {"zero", "one", "plus", "minus"})
    if (max_abs_diff(m, named_state(name, 0)) < 1e-15) return name;
  throw std::invalid_argument("dump_circuit: initial state has no text form");
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> c;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    auto words = split_ws(line);
    if (words[0] == "qubits") {
      if (c) fail(line_no, "duplicate qubits header");
      if (words.size() < 2 || words.size() > 3) fail(line_no, "expected 'qubits <data> [<ancillas>]'");
      const int nd = parse_int(words[1], line_no);
      const int na = words.size() == 3 ? parse_int(words[2], line_no) : 0;
      if (nd < 1 || na < 0) fail(line_no, "qubit counts out of range");
      c.emplace(nd, na);
      continue;
    }
    if (!c) fail(line_no, "missing 'qubits' header");
    if (words[0] == "init") {
      if (words.size() != 3) fail(line_no, "expected 'init q<i> <state>'");
      const int q = parse_qubit(words[1], line_no);
      if (q < 0 || q >= c->total_qubits()) fail(line_no, "qubit out of range");
      c->set_initial_state(q, named_state(words[2], line_no));
    } else if (words[0] == "postselect") {
      if (words.size() != 2) fail(line_no, "expected 'postselect q<i>=<0|1>'");
      auto eq = words[1].find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected 'postselect q<i>=<0|1>'");
      try {
        c->set_postselection(parse_qubit(words[1].substr(0, eq), line_no),
                             parse_int(words[1].substr(eq + 1), line_no));
      } catch (const std::logic_error &e) {
        fail(line_no, e.what());
      }
    } else if (line.starts_with("t=")) {
      auto fields = split(line, ';');
      const int t = parse_int(fields[0].substr(2), line_no);
      if (t != c->num_moments()) fail(line_no, fmt::format("expected t={}", c->num_moments()));
      Moment &m = c->add_moment();
      for (std::size_t i = 1; i < fields.size(); ++i) {
        if (fields[i].empty()) continue;
        m.placements.push_back(parse_placement(fields[i], line_no));
      }
    } else {
      fail(line_no, "unrecognised line");
    }
  }
  if (!c) throw std::invalid_argument("circuit: missing 'qubits' header");
  c->validate();
  return std::move(*c);
}

Circuit load_circuit(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_circuit(ss.str());
}

std::string dump_circuit(const Circuit &c) {
  std::string out = fmt::format("qubits {} {}\n", c.num_data_qubits(), c.num_ancillas());
  for (int q = 0; q < c.total_qubits(); ++q) {
    const std::string s = state_name(c.initial_state(q));
    if (s != "zero") out += fmt::format("init q{} {}\n", q, s);
  }
  for (const auto &[a, o] : c.postselection()) out += fmt::format("postselect q{}={}\n", a, o);
  for (const auto &m : c.moments()) {
    out += fmt::format("t={};", m.time_index);
    for (const auto &p : m.placements) {
      if (p.channel) throw std::invalid_argument("dump_circuit: explicit Kraus channels have no text form");
      gate_library(p.gate.name, p.gate.params);  // throws for unnamed gates
      out += fmt::format(" {}{} ", p.gate.name, format_params(p.gate.params));
      for (std::size_t i = 0; i < p.qubits.size(); ++i) out += fmt::format("{}q{}", i ? "," : "", p.qubits[i]);
      if (p.noise) {
        if (p.noise->is_noiseless()) {
          out += " noise=none";
        } else {
          const double rate = p.gate.arity == 1 ? p.noise->one_qubit_rate : p.noise->two_qubit_rate;
          out += fmt::format(" noise={},{:.17g}", to_string(p.noise->kind), rate);
        }
      }
      out += ";";
    }
    out.back() = '\n';
  }
  return out;
}

}  // namespace circsym
