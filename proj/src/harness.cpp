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

#include "circsym/harness.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "circsym/algorithms.hpp"
#include "circsym/qswitch.hpp"
#include "circsym/sts.hpp"

namespace circsym {
namespace {

constexpr std::pair<Method, std::string_view> kMethodNames[] = {
    {Method::kUnprotected, "unprotected"},   {Method::kQsOriginal, "qs_original"},
    {Method::kQsType1, "qs_type1"},          {Method::kQsType2, "qs_type2"},
    {Method::kSts, "sts"},                   {Method::kStsCat2, "sts_cat2"},
    {Method::kStsErrorFreeCheck, "sts_errorfree_check"},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(std::string_view s) {
  s = trim(s);
  if (s == "pi") return std::numbers::pi;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + std::string(s) + "'");
  return v;
}

long long to_integer(std::string_view s) {
  s = trim(s);
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  return v;
}

int as_count(double v, std::string_view what) {
  if (v != std::floor(v) || v < 1 || v > 64) throw std::invalid_argument(fmt::format("{} must be a positive integer, got {}", what, v));
  return static_cast<int>(v);
}

std::string num(double v) { return fmt::format("{:.12g}", v); }

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
  return out;
}

std::vector<Method> applicable(std::string_view id) {
  if (id == "table1")
    return {Method::kUnprotected, Method::kQsOriginal, Method::kQsType1, Method::kQsType2, Method::kSts};
  if (id == "rot_sweep")
    return {Method::kUnprotected,  Method::kQsOriginal, Method::kQsType1, Method::kQsType2,
            Method::kSts,          Method::kStsErrorFreeCheck};
  if (id == "qft_sweep") return {Method::kUnprotected, Method::kSts, Method::kStsErrorFreeCheck};
  return {Method::kUnprotected, Method::kSts, Method::kStsCat2, Method::kStsErrorFreeCheck};
}

// Switch variants only make sense for some gate counts.
bool applies_to_gates(Method m, int n_gates) {
  if (m == Method::kQsOriginal) return n_gates == 2;
  if (m == Method::kQsType1 || m == Method::kQsType2) return n_gates > 2;
  return true;
}

Protection protection_for(Method m) {
  switch (m) {
    case Method::kUnprotected: return Protection::kNone;
    case Method::kSts:
    case Method::kStsErrorFreeCheck: return Protection::kStsSingle;
    case Method::kStsCat2: return Protection::kStsCat2;
    default: throw std::invalid_argument(fmt::format("method {} does not apply to QAOA", to_string(m)));
  }
}

struct Job {
  std::vector<std::pair<std::string, std::string>> params;
  Method method;
  std::function<RunResult()> compute;
};

ResultRow finish(const std::string &id, Job &job, const RunResult &r) {
  ResultRow row{id, std::move(job.params), job.method, r.purity, r.p_pass, r.sof};
  return row;
}

std::vector<ResultRow> execute(const std::string &id, std::vector<Job> jobs, int workers) {
  std::vector<ResultRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        rows[i] = finish(id, jobs[i], jobs[i].compute());
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto &t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<std::pair<std::string, std::string>> noise_params(const NoiseSpec &n) {
  return {{"kind", std::string(to_string(n.kind))}, {"eps1", num(n.one_qubit_rate)}, {"eps2", num(n.two_qubit_rate)}};
}

}  // namespace

std::string_view to_string(Method m) {
  for (const auto &[method, name] : kMethodNames)
    if (method == m) return name;
  return "unknown";
}

Method parse_method(std::string_view text) {
  for (const auto &[method, name] : kMethodNames)
    if (name == text) return method;
  throw std::invalid_argument("unknown method '" + std::string(text) + "'");
}

ExperimentConfig ExperimentConfig::defaults(std::string_view experiment_id) {
  ExperimentConfig c;
  c.experiment_id = std::string(experiment_id);
  if (experiment_id == "table1") {
    c.kinds = {ChannelKind::kBitFlip};
    c.eps1 = 0.001;
    c.eps2 = {0.002, 0.01};
    c.grid = {2, 10};
  } else if (experiment_id == "rot_sweep") {
    c.kinds = {ChannelKind::kPhaseFlip};
    c.eps1 = 0.001;
    c.eps2 = {0.002, 0.01};
    c.grid = linspace(0.0, std::numbers::pi, 13);
    c.gates = {2, 10};
  } else if (experiment_id == "qft_sweep") {
    c.kinds = {ChannelKind::kBitFlip, ChannelKind::kYError, ChannelKind::kPhaseFlip};
    c.eps1 = 0.0003;
    c.eps2 = {0.003};
    c.grid = {3, 4, 5, 6};
  } else if (experiment_id == "qaoa1_sweep") {
    c.kinds = {ChannelKind::kDepolarizing};
    c.eps2 = {0.001};
    c.eps_ratio = 10;
    c.grid = {3, 4, 5, 6};
    c.instances = 100;
  } else if (experiment_id == "qaoa_multistage") {
    c.kinds = {ChannelKind::kDepolarizing};
    c.eps2 = {0.001};
    c.eps_ratio = 10;
    c.grid = {1, 2, 3, 4};
    c.qubits = 4;
    c.instances = 100;
  } else {
    throw std::invalid_argument("unknown experiment '" + std::string(experiment_id) + "'");
  }
  return c;
}

ExperimentConfig ExperimentConfig::parse(std::string_view text, std::string_view experiment_id) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::string id(experiment_id);
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view s = line;
    if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument(fmt::format("config line {}: expected key = value", line_no));
    std::string key(trim(s.substr(0, eq)));
    std::string value(trim(s.substr(eq + 1)));
    if (key == "experiment") {
      id = value;
      continue;
    }
    entries.emplace_back(key, value);
  }
  if (id.empty()) throw std::invalid_argument("config: no experiment given");
  ExperimentConfig c = defaults(id);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto &[key, value] = entries[i];
    try {
      if (key == "noise" || key == "kinds") {
        c.kinds.clear();
        for (auto k : split_list(value)) c.kinds.push_back(parse_channel_kind(k));
      } else if (key == "eps1") {
        c.eps1 = to_double(value);
      } else if (key == "eps2") {
        c.eps2.clear();
        for (auto v : split_list(value)) c.eps2.push_back(to_double(v));
      } else if (key == "eps_ratio") {
        c.eps_ratio = to_double(value);
      } else if (key == "grid") {
        c.grid.clear();
        for (auto v : split_list(value)) c.grid.push_back(to_double(v));
      } else if (key == "instances") {
        c.instances = static_cast<int>(to_integer(value));
      } else if (key == "seed") {
        c.seed = static_cast<std::uint64_t>(to_integer(value));
      } else if (key == "out" || key == "output") {
        c.output_path = value;
      } else if (key == "theta") {
        c.theta = to_double(value);
      } else if (key == "gates") {
        c.gates.clear();
        for (auto v : split_list(value)) c.gates.push_back(static_cast<int>(to_integer(v)));
      } else if (key == "qubits") {
        c.qubits = static_cast<int>(to_integer(value));
      } else if (key == "methods") {
        c.methods.clear();
        for (auto m : split_list(value)) c.methods.push_back(parse_method(m));
      } else if (key == "workers") {
        c.workers = static_cast<int>(to_integer(value));
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument &e) {
      throw std::invalid_argument(fmt::format("config entry '{}': {}", key, e.what()));
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string &path, std::string_view experiment_id) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), experiment_id);
}

NoiseSpec ExperimentConfig::noise_at(ChannelKind kind, double e2) const {
  NoiseSpec n{eps_ratio > 0 ? e2 / eps_ratio : eps1, e2, kind};
  n.validate();
  return n;
}

void ExperimentConfig::validate() const {
  (void)defaults(experiment_id);
  if (grid.empty()) throw std::invalid_argument("config: empty grid");
  if (instances < 1) throw std::invalid_argument("config: instances must be >= 1");
  if (kinds.empty() || eps2.empty()) throw std::invalid_argument("config: no noise points");
  if (eps_ratio < 0) throw std::invalid_argument("config: eps_ratio must be >= 0");
  for (auto k : kinds)
    for (double e : eps2) (void)noise_at(k, e);
  const auto ok = applicable(experiment_id);
  for (auto m : methods)
    if (std::find(ok.begin(), ok.end(), m) == ok.end())
      throw std::invalid_argument(fmt::format("method {} does not apply to {}", to_string(m), experiment_id));
  if (experiment_id == "rot_sweep") {
    if (gates.empty()) throw std::invalid_argument("config: rot_sweep needs gates");
    for (int g : gates) (void)as_count(g, "gates");
  } else if (experiment_id == "qaoa_multistage") {
    if (qubits < 2 || qubits > 8) throw std::invalid_argument("config: qubits must be in [2, 8]");
    for (double g : grid) (void)as_count(g, "stage count");
  } else {
    for (double g : grid) {
      const int v = as_count(g, "grid value");
      if (experiment_id != "table1" && v < 2) throw std::invalid_argument("config: qubit counts start at 2");
    }
  }
}

const std::string &ResultRow::param(std::string_view key) const {
  for (const auto &[k, v] : params)
    if (k == key) return v;
  throw std::out_of_range("no parameter '" + std::string(key) + "'");
}

Circuit rotation_circuit(Method method, int n_gates, double theta) {
  auto switch_over = [&](SwitchVariant v) {
    SwitchSpec spec;
    spec.variant = v;
    for (int i = 0; i < n_gates; ++i) spec.ops.push_back(SwitchOperation::of_gate(gates::rx(theta)));
    return build_switch(spec);
  };
  const auto sts = STSDescriptor::uniform('X', {0}, {0, n_gates});
  switch (method) {
    case Method::kUnprotected: return rotation_chain(n_gates, theta);
    case Method::kQsOriginal:
      if (n_gates != 2) throw std::invalid_argument("qs_original needs exactly 2 gates");
      return switch_over(SwitchVariant::kOriginalPair);
    case Method::kQsType1: return switch_over(SwitchVariant::kMultiType1);
    case Method::kQsType2: return switch_over(SwitchVariant::kMultiType2);
    case Method::kSts: return instrument(rotation_chain(n_gates, theta), sts);
    case Method::kStsCat2: return instrument(rotation_chain(n_gates, theta), sts, 2);
    case Method::kStsErrorFreeCheck: return instrument(rotation_chain(n_gates, theta), sts, 1, NoiseSpec::none());
  }
  throw std::invalid_argument("unknown method");
}

Circuit qft_method_circuit(Method method, int n) {
  auto checks = qft_sts(n);
  switch (method) {
    case Method::kUnprotected: return qft_circuit(n);
    case Method::kSts: return instrument(qft_circuit(n), checks);
    case Method::kStsErrorFreeCheck:
      for (auto &c : checks) c.noise = NoiseSpec::none();
      return instrument(qft_circuit(n), checks);
    default: throw std::invalid_argument(fmt::format("method {} does not apply to the QFT", to_string(method)));
  }
}

std::vector<ResultRow> run(const ExperimentConfig &config) {
  config.validate();
  std::ofstream file;
  if (!config.output_path.empty()) {
    file.open(config.output_path);
    if (!file) throw std::runtime_error("cannot write " + config.output_path);
  }
  const auto &id = config.experiment_id;
  const std::vector<Method> methods = config.methods.empty() ? applicable(id) : config.methods;

  std::vector<NoiseSpec> noise_points;
  for (auto k : config.kinds)
    for (double e : config.eps2) noise_points.push_back(config.noise_at(k, e));

  std::vector<Job> jobs;
  auto add = [&](std::vector<std::pair<std::string, std::string>> params, Method m, std::function<RunResult()> f) {
    jobs.push_back({std::move(params), m, std::move(f)});
  };

  if (id == "table1" || id == "rot_sweep") {
    std::vector<std::pair<int, double>> points;
    if (id == "table1") {
      for (double g : config.grid) points.emplace_back(as_count(g, "gates"), config.theta);
    } else {
      for (int g : config.gates)
        for (double theta : config.grid) points.emplace_back(g, theta);
    }
    for (const auto &noise : noise_points)
      for (const auto &[g, theta] : points)
        for (Method m : methods) {
          if (!applies_to_gates(m, g)) continue;
          auto params = noise_params(noise);
          params.insert(params.begin(), {{"gates", std::to_string(g)}, {"theta", num(theta)}});
          add(std::move(params), m, [=] { return run_postselected(rotation_circuit(m, g, theta), noise); });
        }
  } else if (id == "qft_sweep") {
    for (const auto &noise : noise_points)
      for (double g : config.grid)
        for (Method m : methods) {
          const int n = as_count(g, "qubits");
          auto params = noise_params(noise);
          params.insert(params.begin(), {"n", std::to_string(n)});
          add(std::move(params), m, [=] { return run_postselected(qft_method_circuit(m, n), noise); });
        }
  } else {
    const bool multistage = id == "qaoa_multistage";
    for (const auto &noise : noise_points)
      for (double g : config.grid)
        for (int inst = 0; inst < config.instances; ++inst)
          for (Method m : methods) {
            const int n = multistage ? config.qubits : as_count(g, "qubits");
            const int stages = multistage ? as_count(g, "stages") : 1;
            const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(inst);
            auto params = noise_params(noise);
            params.insert(params.begin(), {{"n", std::to_string(n)},
                                           {"stages", std::to_string(stages)},
                                           {"instance", std::to_string(inst)}});
            add(std::move(params), m, [=] {
              const auto q = QuboInstance::random(n, seed);
              // Angles are drawn for the deepest circuit so that shallower
              // stage counts are prefixes of it.
              auto angles = QaoaParams::random(multistage ? 64 : 1, seed ^ 0x9e3779b97f4a7c15ULL);
              angles.beta.resize(static_cast<std::size_t>(stages));
              angles.gamma.resize(static_cast<std::size_t>(stages));
              std::optional<NoiseSpec> check_noise;
              if (m == Method::kStsErrorFreeCheck) check_noise = NoiseSpec::none();
              return run_postselected(qaoa_circuit(q, angles, protection_for(m), check_noise), noise);
            });
          }
  }

  auto rows = execute(id, std::move(jobs), config.workers);
  if (file.is_open()) {
    write_csv(file, rows);
    if (!file.flush()) throw std::runtime_error("cannot write " + config.output_path);
  }
  return rows;
}

void write_csv(std::ostream &out, const std::vector<ResultRow> &rows) {
  out << "experiment,params,method,purity,p_pass,sof\n";
  for (const auto &r : rows) {
    std::string params;
    for (const auto &[k, v] : r.params) {
      if (!params.empty()) params += ';';
      params += k + "=" + v;
    }
    out << fmt::format("{},{},{},{},{},{}\n", r.experiment_id, params, to_string(r.method), num(r.purity),
                       num(r.p_pass), num(r.sof));
  }
}

void write_csv(const std::string &path, const std::vector<ResultRow> &rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, rows);
  if (!out.flush()) throw std::runtime_error("cannot write " + path);
}

std::string format_table1(const std::vector<ResultRow> &rows) {
  // Columns keyed by (gates, eps2 / eps1), in order of first appearance
  // after sorting.
  std::vector<std::pair<int, double>> cols;
  std::map<std::pair<Method, std::pair<int, double>>, double> cell;
  for (const auto &r : rows) {
    const int g = std::stoi(r.param("gates"));
    const double ratio = std::stod(r.param("eps2")) / std::stod(r.param("eps1"));
    const std::pair<int, double> key{g, std::round(ratio * 1e6) / 1e6};
    if (std::find(cols.begin(), cols.end(), key) == cols.end()) cols.push_back(key);
    cell[{r.method, key}] = r.purity;
  }
  std::sort(cols.begin(), cols.end());
  std::string out = fmt::format("{:<14}", "");
  for (const auto &[g, ratio] : cols) out += fmt::format(" | {:>21}", fmt::format("{} gates, e2/e1={:g}", g, ratio));
  out += '\n';
  for (Method m : applicable("table1")) {
    out += fmt::format("{:<14}", to_string(m));
    for (const auto &c : cols) {
      const auto it = cell.find({m, c});
      out += fmt::format(" | {:>21}", it == cell.end() ? std::string("n/a") : fmt::format("{:.4f}", it->second));
    }
    out += '\n';
  }
  return out;
}

}  // namespace circsym
