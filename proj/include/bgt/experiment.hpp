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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bgt/graph.hpp"
#include "bgt/policy_params.hpp"
#include "json.hpp"

namespace bgt {

// Full factorial over graph factors (size, edge probability) and policy
// factors. The myopic policy is always part of the setting list.
struct ExperimentDesign {
  std::vector<std::size_t> sizes{20, 50, 80};
  std::vector<double> densities{0.2, 0.5, 0.8};
  std::vector<double> lambdas{0.0, 1.0, 10.0};
  std::vector<int> horizons{3, 4, 5};
  std::vector<double> alphas{0.0, 1.0, 10.0};
  std::vector<int> betas{1, 10, 100};
  int replications = 30;
  std::uint64_t master_seed = 1;
  HpSolver hp_solver = HpSolver::kNeighborhoodSearch;
  // Replaces the factor-generated settings when set.
  std::optional<std::vector<PolicyParams>> policies;

  // M first, then UCB, HP and SC settings in factor order.
  std::vector<PolicyParams> policy_settings() const;
  void validate() const;
};

ExperimentDesign design_from_json(const nlohmann::ordered_json& doc);
nlohmann::ordered_json design_to_json(const ExperimentDesign& design);
ExperimentDesign load_design(const std::string& path);

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t n, double p);
std::uint64_t instance_seed(std::uint64_t cell, int replication);
std::uint64_t policy_seed(std::uint64_t instance, const PolicyParams& policy);

struct ResultRow {
  std::size_t n = 0;
  double p = 0.0;
  int replication = 0;
  std::uint64_t instance_seed = 0;
  std::uint64_t instance_hash = 0;
  std::string policy;  // family
  std::string params;  // ';'-separated key=value
  std::uint64_t policy_seed = 0;
  int steps = 0;
  double total = 0.0;
  double improvement_pct = 0.0;
  double wall_ms = 0.0;
};

struct SweepOptions {
  // 0 means default_parallelism().
  unsigned parallelism = 0;
  // Record wall times; otherwise wall_ms is 0 so output is reproducible byte
  // for byte.
  bool timing = false;
};

// BGT_PARALLELISM when set to a positive integer, else the hardware thread
// count (at least 1).
unsigned default_parallelism();

// Rows in canonical order: (n, p, replication, setting index).
std::vector<ResultRow> run_sweep(const ExperimentDesign& design, const SweepOptions& options = {});

double improvement_pct(double total, double baseline);

std::string sweep_csv_header();
std::string sweep_csv(const std::vector<ResultRow>& rows);
void write_sweep_csv(const std::vector<ResultRow>& rows, const std::string& path);

struct Interval {
  double mean = 0.0;
  double half_width = 0.0;  // 0 with fewer than two samples
};

// Mean with a two-sided Student-t interval on count - 1 degrees of freedom.
Interval t_interval(const std::vector<double>& samples, double confidence = 0.95);

struct SummaryRow {
  std::size_t n = 0;
  double p = 0.0;
  std::string policy;
  std::string params;
  std::size_t count = 0;
  double mean_total = 0.0;
  Interval improvement;
  bool best_in_family = false;
};

// Paired improvements over the myopic row of the same instance. Throws
// SchemaError when a baseline is missing.
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

std::string summary_csv(const std::vector<SummaryRow>& rows);

}  // namespace bgt
