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

#include "bgt/oracle.hpp"

#include <algorithm>
#include <limits>

#include "bgt/bridges.hpp"
#include "bgt/errors.hpp"

namespace bgt {

namespace {

constexpr double kTieTolerance = 1e-9;

class Search {
 public:
  Search(const GraphInstance& instance, const OracleOptions& options)
      : topology_(instance.topology), truth_(instance.truth), options_(options) {
    const std::size_t n = topology_.node_count();
    if (n > 64) throw GraphError("exact oracle supports at most 64 nodes");
    const int edges = static_cast<int>(topology_.non_self_edge_count());
    acyclic_caps_ = options_.use_acyclic_caps && topology_.is_acyclic();
    if (acyclic_caps_) {
      depth_cap_ = 2 * edges;
      visit_cap_.resize(n);
      for (NodeId i = 0; i < n; ++i) visit_cap_[i] = 2 * degree(topology_, i);
    } else {
      depth_cap_ = options_.walk_cap ? *options_.walk_cap : 2 * edges + 2;
    }
    if (options_.use_bridge_rule) bridges_ = find_bridges(topology_);
    // With non-negative rewards and costs, the stretch leading to the (k+1)-th
    // first visit can be replaced by a shortest path through the k nodes
    // already visited without loss, so some optimal walk has at most
    // n (n - 1) / 2 moves.
    const bool nonnegative =
        std::all_of(truth_.reward.begin(), truth_.reward.end(), [](double r) { return r >= 0.0; }) &&
        std::all_of(truth_.cost.begin(), truth_.cost.end(), [](double c) { return c >= 0.0; });
    const auto span = static_cast<long long>(n) - 1;
    cap_is_exact_ = acyclic_caps_ || (nonnegative && 2 * depth_cap_ >= span * (span + 1));
  }

  OracleResult run() {
    const NodeId start = topology_.start();
    SearchNode node;
    node.current = start;
    node.visited = std::uint64_t{1} << start;
    node.walk = {start};
    node.edge_counts.assign(topology_.edge_count(), 0);
    node.visit_counts.assign(topology_.node_count(), 0);
    node.visit_counts[start] = 1;
    double remaining = 0.0;
    for (NodeId i = 0; i < topology_.node_count(); ++i) {
      if (i != start) remaining += std::max(0.0, truth_.reward[i]);
    }
    best_walk_ = node.walk;
    expand(node, remaining);

    OracleResult result;
    result.value = best_;
    result.walk = best_walk_;
    result.expansions = expansions_;
    result.length_cap = depth_cap_;
    result.length_cap_active = max_cut_bound_ > best_ + kTieTolerance;
    result.proven = !aborted_ && (!result.length_cap_active || cap_is_exact_);
    return result;
  }

 private:
  void expand(SearchNode& node, double remaining) {
    if (aborted_) return;
    if (++expansions_ > options_.max_expansions) {
      aborted_ = true;
      return;
    }
    if (node.value > best_ + kTieTolerance) {
      best_ = node.value;
      best_walk_ = node.walk;
    }
    const double bound = node.value + remaining;
    if (options_.on_expand) options_.on_expand(node, bound);
    if (options_.use_bound && bound <= best_ + kTieTolerance) return;
    if (static_cast<int>(node.edges.size()) >= depth_cap_) {
      // Judged against the final incumbent once the search is over.
      max_cut_bound_ = std::max(max_cut_bound_, bound);
      return;
    }
    const NodeId from = node.current;
    for (const auto& nb : topology_.neighbors(from)) {
      const NodeId to = nb.node;
      if (to == from) continue;
      if (acyclic_caps_ && node.visit_counts[to] >= visit_cap_[to]) continue;
      const std::uint64_t bit = std::uint64_t{1} << to;
      const bool fresh = (node.visited & bit) == 0;
      const double gain = (fresh ? truth_.reward[to] : 0.0) - truth_.cost[nb.edge];
      const std::uint64_t saved_visited = node.visited;
      const double saved_value = node.value;

      node.current = to;
      node.visited |= bit;
      node.value += gain;
      node.walk.push_back(to);
      node.edges.push_back(nb.edge);
      ++node.edge_counts[nb.edge];
      ++node.visit_counts[to];

      const bool pruned = (options_.use_circuit_rule && prune_repeated_circuit(node)) ||
                          (options_.use_bridge_rule && prune_bridge_count(node, bridges_));
      if (!pruned) expand(node, remaining - (fresh ? std::max(0.0, truth_.reward[to]) : 0.0));

      --node.visit_counts[to];
      --node.edge_counts[nb.edge];
      node.edges.pop_back();
      node.walk.pop_back();
      node.value = saved_value;
      node.visited = saved_visited;
      node.current = from;
      if (aborted_) return;
    }
  }

  const Topology& topology_;
  const GroundTruth& truth_;
  const OracleOptions& options_;
  bool acyclic_caps_ = false;
  bool cap_is_exact_ = false;
  int depth_cap_ = 0;
  std::vector<int> visit_cap_;
  std::vector<bool> bridges_;
  double best_ = 0.0;
  std::vector<NodeId> best_walk_;
  std::uint64_t expansions_ = 0;
  bool aborted_ = false;
  double max_cut_bound_ = -std::numeric_limits<double>::infinity();
};

std::vector<std::size_t> sorted_edges(const std::vector<std::size_t>& edges, std::size_t first,
                                      std::size_t last) {
  std::vector<std::size_t> out(edges.begin() + static_cast<std::ptrdiff_t>(first),
                               edges.begin() + static_cast<std::ptrdiff_t>(last));
  std::sort(out.begin(), out.end());
  return out;
}

bool all_distinct(const std::vector<std::size_t>& sorted) {
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

}  // namespace

OracleResult clairvoyant_exact(const GraphInstance& instance, const OracleOptions& options) {
  return Search(instance, options).run();
}

bool prune_repeated_circuit(const SearchNode& node) {
  const auto& walk = node.walk;
  if (walk.size() < 3) return false;
  const std::size_t last = walk.size() - 1;
  const NodeId end = walk[last];
  std::size_t p = last;
  while (p > 0 && walk[p - 1] != end) --p;
  if (p == 0) return false;
  --p;
  const std::size_t length = last - p;
  const auto circuit = sorted_edges(node.edges, p, last);
  if (!all_distinct(circuit)) return false;
  for (std::size_t q = 0; q + length <= p; ++q) {
    if (walk[q] != end || walk[q + length] != end) continue;
    if (sorted_edges(node.edges, q, q + length) == circuit) return true;
  }
  return false;
}

bool prune_bridge_count(const SearchNode& node, const std::vector<bool>& is_bridge) {
  for (std::size_t e = 0; e < node.edge_counts.size() && e < is_bridge.size(); ++e) {
    if (is_bridge[e] && node.edge_counts[e] > 2) return true;
  }
  return false;
}

int acyclic_walk_cap(const Topology& topology) {
  if (!topology.is_acyclic()) throw GraphError("acyclic_walk_cap: graph has a cycle");
  return 2 * static_cast<int>(topology.non_self_edge_count());
}

std::vector<CircuitViolation> dominated_circuit_check(const std::vector<NodeId>& walk,
                                                      const Topology& topology) {
  struct Circuit {
    std::size_t first;
    std::size_t last;
    std::vector<NodeId> nodes;
  };
  std::vector<Circuit> circuits;
  for (std::size_t q = 0; q < walk.size(); ++q) {
    std::vector<std::size_t> edges;
    for (std::size_t r = q + 1; r < walk.size(); ++r) {
      if (!topology.adjacent(walk[r - 1], walk[r])) {
        throw GraphError("walk is not connected at position " + std::to_string(r));
      }
      edges.push_back(topology.edge_index(walk[r - 1], walk[r]));
      if (walk[r] != walk[q]) continue;
      auto sorted = edges;
      std::sort(sorted.begin(), sorted.end());
      if (!all_distinct(sorted)) break;
      std::vector<NodeId> nodes(walk.begin() + static_cast<std::ptrdiff_t>(q),
                                walk.begin() + static_cast<std::ptrdiff_t>(r));
      std::sort(nodes.begin(), nodes.end());
      nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
      circuits.push_back({q, r, std::move(nodes)});
    }
  }
  std::vector<CircuitViolation> out;
  for (std::size_t a = 0; a < circuits.size(); ++a) {
    for (std::size_t b = 0; b < circuits.size(); ++b) {
      const auto& small = circuits[a];
      const auto& large = circuits[b];
      if (a == b || walk[small.first] != walk[large.first]) continue;
      if (small.last > large.first && large.last > small.first) continue;
      if (small.nodes.size() > large.nodes.size()) continue;
      if (small.nodes.size() == large.nodes.size() && a > b) continue;
      if (!std::includes(large.nodes.begin(), large.nodes.end(), small.nodes.begin(), small.nodes.end())) {
        continue;
      }
      out.push_back({small.first, small.last, large.first, large.last});
    }
  }
  return out;
}

Decision hamiltonian_decision(const SimpleGraph& graph, const OracleOptions& options, double hub_cost) {
  const GraphInstance reduced = hamiltonian_reduction(graph, hub_cost);
  const OracleResult result = clairvoyant_exact(reduced, options);
  const double threshold = hamiltonian_threshold(graph, hub_cost);
  if (result.value >= threshold - 1e-9) return Decision::kYes;
  return result.proven ? Decision::kNo : Decision::kIndeterminate;
}

nlohmann::ordered_json oracle_to_json(const OracleResult& result, NodeId label_offset) {
  nlohmann::ordered_json walk = nlohmann::ordered_json::array();
  for (const NodeId i : result.walk) walk.push_back(i + label_offset);
  return {{"value", result.value},
          {"walk", walk},
          {"expansions", result.expansions},
          {"proven", result.proven},
          {"length_cap", result.length_cap},
          {"length_cap_active", result.length_cap_active}};
}

}  // namespace bgt
