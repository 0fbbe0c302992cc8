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

// Command-line front end: instance generation, single episodes, the exact
// oracle, factorial sweeps, the illustrative comparison table and DOT output.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "bgt/errors.hpp"
#include "bgt/experiment.hpp"
#include "bgt/generator.hpp"
#include "bgt/instance_io.hpp"
#include "bgt/oracle.hpp"
#include "bgt/policy_params.hpp"
#include "bgt/report.hpp"
#include "bgt/traversal.hpp"

namespace {

struct InstanceSource {
  std::string path;
  bool fixture = false;

  void add_to(CLI::App* app) {
    app->add_option("--instance", path, "Instance JSON file");
    app->add_flag("--fixture", fixture, "Use the built-in five-node illustrative instance");
  }

  bgt::GraphInstance load() const {
    if (fixture) return bgt::build_fixture_illustrative();
    if (path.empty()) throw bgt::Error("one of --instance or --fixture is required");
    return bgt::load_instance(path);
  }

  // Node labels are 1-based on the fixture, 0-based elsewhere.
  bgt::NodeId label_offset() const { return fixture ? 1 : 0; }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw bgt::Error("cannot write '" + out + "'");
  file << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian graph traversal simulator"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out;

  auto* gen = app.add_subcommand("gen", "Generate a connected Erdos-Renyi instance");
  std::size_t n = 20;
  double p = 0.2;
  bool gen_fixture = false;
  gen->add_option("--n", n, "Node count")->check(CLI::PositiveNumber);
  gen->add_option("--p", p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", seed, "Instance seed");
  gen->add_flag("--fixture", gen_fixture, "Write the illustrative instance instead");
  gen->add_option("--out", out, "Output path (default stdout)");

  auto* run = app.add_subcommand("run", "Run one episode and print its log as JSON");
  InstanceSource run_src;
  std::string policy_spec = "M";
  bool run_csv = false;
  run_src.add_to(run);
  run->add_option("--policy", policy_spec, "Policy spec, e.g. M, UCB:lambda=1, HP:alpha=1,H=3, SC:beta=10");
  run->add_option("--seed", seed, "Episode seed");
  run->add_flag("--csv", run_csv, "Print a one-line CSV summary instead of JSON");
  run->add_option("--out", out, "Output path (default stdout)");

  auto* oracle = app.add_subcommand("oracle", "Solve the perfect-information problem exactly");
  InstanceSource oracle_src;
  std::uint64_t max_expansions = 100'000'000;
  std::optional<int> walk_cap;
  oracle_src.add_to(oracle);
  oracle->add_option("--max-expansions", max_expansions, "Expansion budget");
  oracle->add_option("--walk-cap", walk_cap, "Walk length cap for cyclic graphs (default 2|E|+2)");
  oracle->add_option("--out", out, "Output path (default stdout)");

  auto* sweep = app.add_subcommand("sweep", "Run a factorial experiment and write result rows as CSV");
  std::string design_path;
  std::optional<std::uint64_t> sweep_seed;
  std::optional<int> replications;
  std::optional<unsigned> parallelism;
  std::string summary_path;
  bool timing = false;
  sweep->add_option("--design", design_path, "Design JSON (default: full factorial)");
  sweep->add_option("--seed", sweep_seed, "Master seed (overrides the design)");
  sweep->add_option("--replications", replications, "Replications per cell (overrides the design)");
  sweep->add_option("--parallelism", parallelism, "Worker threads (default $BGT_PARALLELISM or all cores)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--summary", summary_path, "Also write the per-setting summary CSV here");
  sweep->add_flag("--timing", timing, "Record wall times (output is then not reproducible)");
  sweep->add_option("--out", out, "Output path (default stdout)");

  auto* table3 = app.add_subcommand("table3", "Compare every policy and the oracle on the illustrative instance");
  int table_seeds = 10;
  bool table_json = false;
  table3->add_option("--seeds", table_seeds, "Seeds per randomized setting")->check(CLI::PositiveNumber);
  table3->add_flag("--json", table_json, "Print JSON instead of a text table");
  table3->add_option("--out", out, "Output path (default stdout)");

  auto* dot = app.add_subcommand("dot", "Run one episode and print it as a Graphviz digraph");
  InstanceSource dot_src;
  std::string dot_policy = "M";
  dot_src.add_to(dot);
  dot->add_option("--policy", dot_policy, "Policy spec");
  dot->add_option("--seed", seed, "Episode seed");
  dot->add_option("--out", out, "Output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto instance = gen_fixture ? bgt::build_fixture_illustrative() : bgt::erdos_renyi(n, p, seed);
      emit(bgt::serialize(instance) + "\n", out);
    } else if (*run) {
      const auto instance = run_src.load();
      const auto policy = bgt::make_policy(bgt::parse_policy(policy_spec));
      bgt::EpisodeOptions options;
      options.instance_id = instance.name;
      const auto log = bgt::run_episode(instance, *policy, seed, options);
      emit(run_csv ? bgt::episode_csv_header() + "\n" + bgt::episode_csv_row(log) + "\n"
                   : bgt::episode_to_json(log).dump(2) + "\n",
           out);
      if (log.fault) {
        std::cerr << "error: " << *log.fault << "\n";
        return 3;
      }
    } else if (*oracle) {
      const auto instance = oracle_src.load();
      bgt::OracleOptions options;
      options.max_expansions = max_expansions;
      options.walk_cap = walk_cap;
      const auto result = bgt::clairvoyant_exact(instance, options);
      emit(bgt::oracle_to_json(result, oracle_src.label_offset()).dump(2) + "\n", out);
    } else if (*sweep) {
      bgt::ExperimentDesign design = design_path.empty() ? bgt::ExperimentDesign{} : bgt::load_design(design_path);
      if (sweep_seed) design.master_seed = *sweep_seed;
      if (replications) design.replications = *replications;
      bgt::SweepOptions options;
      options.parallelism = parallelism.value_or(0);
      options.timing = timing;
      const auto rows = bgt::run_sweep(design, options);
      emit(bgt::sweep_csv(rows), out);
      if (!summary_path.empty()) emit(bgt::summary_csv(bgt::summarize(rows)), summary_path);
    } else if (*table3) {
      bgt::Table3Options options;
      options.seeds = table_seeds;
      const auto report = bgt::reproduce_table3(options);
      emit(table_json ? report.to_json().dump(2) + "\n" : report.text(), out);
    } else if (*dot) {
      const auto instance = dot_src.load();
      const auto policy = bgt::make_policy(bgt::parse_policy(dot_policy));
      const auto log = bgt::run_episode(instance, *policy, seed);
      emit(bgt::emit_dot(log, instance, dot_src.label_offset()), out);
    }
  } catch (const bgt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
