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

#include <optional>
#include <string>
#include <vector>

#include "bgt/oracle.hpp"
#include "bgt/traversal.hpp"

namespace bgt {

// One row of the illustrative-instance comparison.
struct Table3Row {
  std::string label;       // M, UCB, HP, SC, Optimal
  std::string policy;      // descriptor of the best run
  std::uint64_t seed = 0;  // episode seed of the best run
  std::vector<NodeId> walk;
  double achieved = 0.0;
  std::vector<NodeId> reference_walk;
  double target = 0.0;
  double reference_replay = 0.0;  // scripted replay of the reference walk
  bool flagged = false;           // |achieved - target| > 0.5
  // First decision epoch at which the walk leaves the reference walk.
  std::optional<int> divergence_epoch;
};

struct Table3Report {
  std::vector<Table3Row> rows;
  OracleResult oracle;
  std::string text() const;
  nlohmann::ordered_json to_json() const;
};

struct Table3Options {
  int seeds = 10;
  BeliefConfig belief;
};

// Runs M, UCB(1), HP(1, 3, exhaustive), SC over beta in {1, 10, 100} and the
// exact oracle on the illustrative instance; rows with several runs keep the
// best total.
Table3Report reproduce_table3(const Table3Options& options = {});

std::optional<int> first_divergence(const std::vector<NodeId>& walk, const std::vector<NodeId>& reference);

// Graphviz digraph: nodes pinned at their coordinates, base edges undirected
// and grey, traversals directed and labeled "order: gain".
std::string emit_dot(const EpisodeLog& log, const GraphInstance& instance, NodeId label_offset = 0);

}  // namespace bgt
