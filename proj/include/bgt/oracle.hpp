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
#include <functional>
#include <optional>
#include <vector>

#include "bgt/graph.hpp"
#include "json.hpp"

namespace bgt {

// Partial walk during the exact search. `walk` holds nodes from the start;
// `edges` the traversed edge indices.
struct SearchNode {
  NodeId current = 0;
  std::uint64_t visited = 0;
  std::vector<NodeId> walk;
  std::vector<std::size_t> edges;
  double value = 0.0;
  std::vector<int> edge_counts;
  std::vector<int> visit_counts;
};

struct OracleOptions {
  // Prune when value + uncollected positive rewards cannot beat the incumbent.
  bool use_bound = true;
  // Repeated-circuit and bridge-count rules.
  bool use_circuit_rule = true;
  bool use_bridge_rule = true;
  // On acyclic graphs: depth 2|E| and per-node visits 2 * degree.
  bool use_acyclic_caps = true;
  std::uint64_t max_expansions = 100'000'000;
  // Walk length cap for cyclic graphs (or with acyclic caps off); 2|E| + 2
  // when unset.
  std::optional<int> walk_cap;
  // Called at every expanded node with its upper bound.
  std::function<void(const SearchNode&, double)> on_expand;
};

struct OracleResult {
  double value = 0.0;
  std::vector<NodeId> walk;  // from the start; a lone start means stay
  std::uint64_t expansions = 0;
  // Exact: expansion cap not hit, and the length cap either cut nothing that
  // could beat the optimum or is itself a proven bound (the acyclic caps, or
  // at least n (n - 1) / 2 moves with non-negative rewards and costs).
  bool proven = false;
  // Some walk cut at the length cap had a bound above the reported optimum.
  bool length_cap_active = false;
  int length_cap = 0;
};

// Perfect-information optimum over walks from the start. Among equal values
// the lexicographically smallest walk found is reported. Up to 64 nodes.
OracleResult clairvoyant_exact(const GraphInstance& instance, const OracleOptions& options = {});

// True when the last move closed a circuit whose edge set and endpoint repeat
// a circuit completed earlier in the walk.
bool prune_repeated_circuit(const SearchNode& node);

// True when any bridge has been traversed more than twice.
bool prune_bridge_count(const SearchNode& node, const std::vector<bool>& is_bridge);

// 2 * non-self edge count. Throws GraphError on a graph with a cycle.
int acyclic_walk_cap(const Topology& topology);

// Pair of circuits on a walk, by index range [first, last] into the walk.
struct CircuitViolation {
  std::size_t smaller_first = 0;
  std::size_t smaller_last = 0;
  std::size_t larger_first = 0;
  std::size_t larger_last = 0;
};

// Audit: distinct circuits on non-overlapping stretches of the walk, sharing
// an endpoint, with the node set of one contained in the other's.
std::vector<CircuitViolation> dominated_circuit_check(const std::vector<NodeId>& walk,
                                                      const Topology& topology);

enum class Decision { kYes, kNo, kIndeterminate };

// Hamiltonian-path existence via the hub reduction and the exact oracle.
Decision hamiltonian_decision(const SimpleGraph& graph, const OracleOptions& options = {},
                              double hub_cost = 1.0);

nlohmann::ordered_json oracle_to_json(const OracleResult& result, NodeId label_offset = 0);

}  // namespace bgt
