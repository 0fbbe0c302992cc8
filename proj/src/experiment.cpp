// Copyright 2026 The bgt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bgt/experiment.hpp"

#include <atomic>
#include <bit>
#include <boost/math/distributions/students_t.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "bgt/errors.hpp"
#include "bgt/generator.hpp"
#include "bgt/instance_io.hpp"
#include "bgt/rng.hpp"
#include "bgt/traversal.hpp"

namespace bgt {

namespace {

std::string format_g(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

template <typename T>
std::vector<T> read_list(const nlohmann::ordered_json& doc, const char* key, std::vector<T> fallback) {
  if (!doc.contains(key)) return fallback;
  const auto& field = doc.at(key);
  if (!field.is_array() || field.empty()) {
    throw SchemaError(std::string("design: '") + key + "' must be a non-empty array");
  }
  try {
    return field.get<std::vector<T>>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string("design: '") + key + "' has an element of the wrong type");
  }
}

}  // namespace

std::vector<PolicyParams> ExperimentDesign::policy_settings() const {
  std::vector<PolicyParams> out;
  PolicyParams myopic;
  myopic.kind = PolicyKind::kMyopic;
  out.push_back(myopic);
  if (policies) {
    for (const auto& p : *policies) {
      if (p.kind != PolicyKind::kMyopic) out.push_back(p);
    }
    return out;
  }
  for (const double lambda : lambdas) {
    PolicyParams p;
    p.kind = PolicyKind::kUcb;
    p.lambda = lambda;
    out.push_back(p);
  }
  for (const int h : horizons) {
    for (const double alpha : alphas) {
      PolicyParams p;
      p.kind = PolicyKind::kHPath;
      p.horizon = h;
      p.alpha = alpha;
      p.solver = hp_solver;
      out.push_back(p);
    }
  }
  for (const int beta : betas) {
    PolicyParams p;
    p.kind = PolicyKind::kSpeculating;
    p.beta = beta;
    out.push_back(p);
  }
  return out;
}

void ExperimentDesign::validate() const {
  if (sizes.empty() || densities.empty()) throw SchemaError("design: no graph cells");
  for (const auto n : sizes) {
    if (n < 1 || n > 10000) throw SchemaError("design: sizes must be in [1, 10000]");
  }
  for (const double p : densities) {
    if (!(p >= 0.0 && p <= 1.0)) throw SchemaError("design: densities must be in [0, 1]");
  }
  if (replications < 1) throw SchemaError("design: replications must be >= 1");
  for (const auto& p : policy_settings()) parse_policy(p.to_string());
}

ExperimentDesign design_from_json(const nlohmann::ordered_json& doc) {
  if (!doc.is_object()) throw SchemaError("design: expected a JSON object");
  static const char* const kKnown[] = {"sizes", "densities", "lambdas", "horizons", "alphas", "betas",
                                       "replications", "master_seed", "hp_solver", "policies"};
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* k : kKnown) ok = ok || key == k;
    if (!ok) throw SchemaError("design: unknown field '" + key + "'");
  }
  ExperimentDesign d;
  d.sizes = read_list(doc, "sizes", d.sizes);
  d.densities = read_list(doc, "densities", d.densities);
  d.lambdas = read_list(doc, "lambdas", d.lambdas);
  d.horizons = read_list(doc, "horizons", d.horizons);
  d.alphas = read_list(doc, "alphas", d.alphas);
  d.betas = read_list(doc, "betas", d.betas);
  if (doc.contains("replications")) {
    if (!doc["replications"].is_number_integer()) throw SchemaError("design: 'replications' must be an integer");
    d.replications = doc["replications"].get<int>();
  }
  if (doc.contains("master_seed")) {
    if (!doc["master_seed"].is_number_unsigned()) {
      throw SchemaError("design: 'master_seed' must be a non-negative integer");
    }
    d.master_seed = doc["master_seed"].get<std::uint64_t>();
  }
  if (doc.contains("hp_solver")) {
    const auto s = doc["hp_solver"].get<std::string>();
    if (s == "exhaustive") {
      d.hp_solver = HpSolver::kExhaustive;
    } else if (s == "search") {
      d.hp_solver = HpSolver::kNeighborhoodSearch;
    } else {
      throw SchemaError("design: 'hp_solver' must be 'search' or 'exhaustive'");
    }
  }
  if (doc.contains("policies")) {
    std::vector<PolicyParams> list;
    for (const auto& item : doc["policies"]) {
      if (!item.is_string()) throw SchemaError("design: 'policies' entries must be strings");
      list.push_back(parse_policy(item.get<std::string>()));
    }
    d.policies = std::move(list);
  }
  d.validate();
  return d;
}

nlohmann::ordered_json design_to_json(const ExperimentDesign& d) {
  nlohmann::ordered_json doc;
  doc["sizes"] = d.sizes;
  doc["densities"] = d.densities;
  doc["lambdas"] = d.lambdas;
  doc["horizons"] = d.horizons;
  doc["alphas"] = d.alphas;
  doc["betas"] = d.betas;
  doc["replications"] = d.replications;
  doc["master_seed"] = d.master_seed;
  doc["hp_solver"] = d.hp_solver == HpSolver::kExhaustive ? "exhaustive" : "search";
  if (d.policies) {
    auto list = nlohmann::ordered_json::array();
    for (const auto& p : *d.policies) list.push_back(p.to_string());
    doc["policies"] = list;
  }
  return doc;
}

ExperimentDesign load_design(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open design file '" + path + "'");
  try {
    return design_from_json(nlohmann::ordered_json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("design '" + path + "': " + e.what());
  }
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t n, double p) {
  return derive_seed(master_seed, {static_cast<std::uint64_t>(n), std::bit_cast<std::uint64_t>(p)});
}

std::uint64_t instance_seed(std::uint64_t cell, int replication) {
  return derive_seed(cell, static_cast<std::uint64_t>(replication));
}

std::uint64_t policy_seed(std::uint64_t instance, const PolicyParams& policy) {
  return derive_seed(instance, policy.to_string());
}

unsigned default_parallelism() {
  if (const char* env = std::getenv("BGT_PARALLELISM")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double improvement_pct(double total, double baseline) {
  return 100.0 * (total - baseline) / std::max(std::abs(baseline), 1e-6);
}

std::vector<ResultRow> run_sweep(const ExperimentDesign& design, const SweepOptions& options) {
  design.validate();
  const auto settings = design.policy_settings();

  struct Cell {
    std::size_t n;
    double p;
    int replication;
    std::uint64_t seed;
    GraphInstance instance;
    std::uint64_t hash;
  };
  std::vector<Cell> cells;
  for (const auto n : design.sizes) {
    for (const double p : design.densities) {
      const std::uint64_t cs = cell_seed(design.master_seed, n, p);
      for (int r = 0; r < design.replications; ++r) {
        const std::uint64_t seed = instance_seed(cs, r);
        try {
          auto instance = erdos_renyi(n, p, seed);
          const auto hash = instance_hash(instance);
          cells.push_back({n, p, r, seed, std::move(instance), hash});
        } catch (const GenerationError& e) {
          throw GenerationError("cell (n=" + std::to_string(n) + ", p=" + format_g(p, 6) +
                                ", replication " + std::to_string(r) + "): " + e.what());
        }
      }
    }
  }

  const std::size_t jobs = cells.size() * settings.size();
  std::vector<ResultRow> rows(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const Cell& cell = cells[job / settings.size()];
      const PolicyParams& setting = settings[job % settings.size()];
      try {
        const auto policy = make_policy(setting);
        const std::uint64_t seed = policy_seed(cell.seed, setting);
        const auto began = std::chrono::steady_clock::now();
        const EpisodeLog log = run_episode(cell.instance, *policy, seed);
        const auto ended = std::chrono::steady_clock::now();
        ResultRow& row = rows[job];
        row.n = cell.n;
        row.p = cell.p;
        row.replication = cell.replication;
        row.instance_seed = cell.seed;
        row.instance_hash = cell.hash;
        row.policy = setting.family();
        row.params = setting.params(';');
        row.policy_seed = seed;
        row.steps = log.steps();
        row.total = log.total;
        if (options.timing) {
          row.wall_ms = std::chrono::duration<double, std::milli>(ended - began).count();
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs);
        return;
      }
    }
  };
  const unsigned threads = std::max<unsigned>(
      1, std::min<std::size_t>(options.parallelism ? options.parallelism : default_parallelism(), jobs));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  // Settings start with M, so each cell's baseline is its first row.
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const double baseline = rows[c * settings.size()].total;
    for (std::size_t s = 0; s < settings.size(); ++s) {
      auto& row = rows[c * settings.size() + s];
      row.improvement_pct = improvement_pct(row.total, baseline);
    }
  }
  return rows;
}

std::string sweep_csv_header() {
  return "n,p,instance_seed,instance_hash,policy,params,policy_seed,steps,total,improvement_pct,wall_ms";
}

std::string sweep_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << sweep_csv_header() << '\n';
  for (const auto& r : rows) {
    out << r.n << ',' << format_g(r.p, 6) << ',' << r.instance_seed << ',' << r.instance_hash << ','
        << csv_field(r.policy) << ',' << csv_field(r.params) << ',' << r.policy_seed << ',' << r.steps
        << ',' << format_g(r.total, 12) << ',' << format_g(r.improvement_pct, 10) << ','
        << format_g(r.wall_ms, 6) << '\n';
  }
  return out.str();
}

void write_sweep_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << sweep_csv(rows);
}

Interval t_interval(const std::vector<double>& samples, double confidence) {
  Interval out;
  if (samples.empty()) return out;
  double sum = 0.0;
  for (const double x : samples) sum += x;
  const double n = static_cast<double>(samples.size());
  out.mean = sum / n;
  if (samples.size() < 2) return out;
  double ss = 0.0;
  for (const double x : samples) ss += (x - out.mean) * (x - out.mean);
  const double sd = std::sqrt(ss / (n - 1.0));
  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.5 + confidence / 2.0);
  out.half_width = t * sd / std::sqrt(n);
  return out;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  using CellKey = std::tuple<std::size_t, double, std::uint64_t>;
  std::map<CellKey, double> baseline;
  for (const auto& r : rows) {
    if (r.policy == "M") baseline[{r.n, r.p, r.instance_seed}] = r.total;
  }
  using GroupKey = std::tuple<std::size_t, double, std::string, std::string>;
  std::map<GroupKey, std::vector<const ResultRow*>> groups;
  std::vector<GroupKey> order;
  for (const auto& r : rows) {
    if (!baseline.contains({r.n, r.p, r.instance_seed})) {
      throw SchemaError("summarize: no myopic baseline for n=" + std::to_string(r.n) +
                        " p=" + format_g(r.p, 6) + " instance " + std::to_string(r.instance_seed));
    }
    GroupKey key{r.n, r.p, r.policy, r.params};
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  std::vector<SummaryRow> out;
  for (const auto& key : order) {
    const auto& members = groups.at(key);
    SummaryRow s;
    std::tie(s.n, s.p, s.policy, s.params) = key;
    s.count = members.size();
    std::vector<double> gains;
    double total = 0.0;
    for (const auto* r : members) {
      gains.push_back(improvement_pct(r->total, baseline.at({r->n, r->p, r->instance_seed})));
      total += r->total;
    }
    s.mean_total = total / static_cast<double>(members.size());
    s.improvement = t_interval(gains);
    out.push_back(std::move(s));
  }
  std::map<std::tuple<std::size_t, double, std::string>, std::size_t> best;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto key = std::make_tuple(out[i].n, out[i].p, out[i].policy);
    const auto it = best.find(key);
    if (it == best.end() || out[i].improvement.mean > out[it->second].improvement.mean) best[key] = i;
  }
  for (const auto& [key, index] : best) out[index].best_in_family = true;
  return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  out << "n,p,policy,params,count,mean_total,mean_improvement_pct,ci95_half_width,best\n";
  for (const auto& s : rows) {
    out << s.n << ',' << format_g(s.p, 6) << ',' << csv_field(s.policy) << ',' << csv_field(s.params)
        << ',' << s.count << ',' << format_g(s.mean_total, 10) << ',' << format_g(s.improvement.mean, 8)
        << ',' << format_g(s.improvement.half_width, 8) << ',' << (s.best_in_family ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace bgt
