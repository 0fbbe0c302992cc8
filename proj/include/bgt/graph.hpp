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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bgt {

using NodeId = std::uint32_t;
using FeatureVector = std::vector<double>;

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

// Undirected edge key; (i, j) and (j, i) name the same edge. a == b is the
// node's self-loop.
struct EdgeKey {
  NodeId a = 0;
  NodeId b = 0;

  EdgeKey() = default;
  EdgeKey(NodeId i, NodeId j) : a(i < j ? i : j), b(i < j ? j : i) {}

  bool is_self_loop() const { return a == b; }
  NodeId other(NodeId endpoint) const { return endpoint == a ? b : a; }
  auto operator<=>(const EdgeKey&) const = default;
};

struct Node {
  NodeId id = 0;
  Point coords;
  // Empty on construction input means "derive by the default convention".
  FeatureVector features;
};

struct Edge {
  EdgeKey key;
  FeatureVector features;
};

struct Neighbor {
  NodeId node = 0;
  std::size_t edge = 0;
};

// The part of an instance a traveler is allowed to see: topology, covariates,
// start node and horizon. Immutable after construction.
class Topology {
 public:
  // Validates: node ids dense and in order, edges unique and in range, every
  // node has a self-loop, graph connected ignoring self-loops, start valid,
  // horizon >= 1. Empty feature vectors are filled by the default convention
  // (node: degree and average neighbor degree; edge: endpoint coordinates in
  // canonical key order). Edges are stored sorted by key.
  Topology(std::vector<Node> nodes, std::vector<Edge> edges, NodeId start, int horizon);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t non_self_edge_count() const { return edges_.size() - nodes_.size(); }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node& node(NodeId i) const;
  const Edge& edge(std::size_t index) const { return edges_.at(index); }

  // Sorted by neighbor id; includes the node itself through its self-loop.
  std::span<const Neighbor> neighbors(NodeId i) const;
  bool adjacent(NodeId i, NodeId j) const { return find_edge(i, j).has_value(); }
  std::optional<std::size_t> find_edge(NodeId i, NodeId j) const;
  // Throws GraphError when i and j are not adjacent.
  std::size_t edge_index(NodeId i, NodeId j) const;
  std::size_t self_loop(NodeId i) const { return edge_index(i, i); }

  NodeId start() const { return start_; }
  int horizon() const { return horizon_; }

  // True when the graph, ignoring self-loops, is a tree.
  bool is_acyclic() const { return non_self_edge_count() + 1 == node_count(); }

  void check_node(NodeId i) const;

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
  std::map<EdgeKey, std::size_t> edge_lookup_;
  NodeId start_ = 0;
  int horizon_ = 1;
};

// Convenience builder: coordinates plus undirected links; self-loops are added.
Topology make_topology(const std::vector<Point>& coords,
                       const std::vector<std::pair<NodeId, NodeId>>& links, NodeId start,
                       int horizon = 500);

// Hidden ground truth, indexed by node id and by edge index.
struct GroundTruth {
  std::vector<double> reward;
  std::vector<double> cost;
};

struct GraphInstance {
  Topology topology;
  GroundTruth truth;
  std::string name;
};

// Distinct neighbors of i including i itself.
int degree(const Topology& topology, NodeId i);

// Mean degree over the neighbor multiset in which i's self-loop contributes i
// twice and every other neighbor once.
double avg_neighbor_degree(const Topology& topology, NodeId i);

FeatureVector default_node_features(const Topology& topology, NodeId i);
FeatureVector default_edge_features(const std::vector<Node>& nodes, EdgeKey key);

// r(d, a) = degree_weight * d + avg_weight * a + interaction_weight * d * a.
struct InteractionRewardModel {
  double degree_weight = 64.0 / 15.0;
  double avg_weight = 1.0;
  double interaction_weight = 34.0 / 15.0;

  double operator()(double degree, double avg_neighbor) const {
    return degree_weight * degree + avg_weight * avg_neighbor +
           interaction_weight * degree * avg_neighbor;
  }
};

// Pluggable ground-truth functions.
struct TruthModel {
  std::function<double(const Topology&, NodeId)> reward;
  std::function<double(const Topology&, const Edge&)> cost;
};

// Reward from the interaction model on (degree, avg neighbor degree); cost is
// the Euclidean endpoint distance (0 on self-loops).
TruthModel default_truth_model(InteractionRewardModel model = {});

GroundTruth apply_truth(const Topology& topology, const TruthModel& model);
GraphInstance with_truth(Topology topology, const TruthModel& model = default_truth_model(),
                         std::string name = {});

// Reward actually earned on a first visit: the start node's reward is received
// before the first decision and never counts toward a walk's total.
double earned_reward(const GraphInstance& instance, NodeId i);

// The five-node illustrative instance. Node labels 1..5 map to ids 0..4.
GraphInstance build_fixture_illustrative();

// Converts "1-4-1-2-5-3" style 1-based labels into node ids.
std::vector<NodeId> fixture_walk(const std::string& labels);
std::string format_walk(std::span<const NodeId> walk, NodeId label_offset = 0);

// Simple undirected graph without self-loops.
struct SimpleGraph {
  std::size_t node_count = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
};

bool is_connected(const SimpleGraph& graph);

// Hub construction that maps Hamiltonian-path existence in `graph` onto the
// clairvoyant's decision problem. A hub node (id = graph.node_count) joins
// every node of `graph` with cost `hub_cost`; graph edges cost 1, graph nodes
// reward 2, hub reward 0, start = hub.
//
// With hub_cost = 1 the best walk value is |N_H| exactly when `graph` has a
// Hamiltonian path and strictly less otherwise. With hub_cost = 0 the walk can
// bounce through the hub for free and the threshold no longer separates the
// two cases.
GraphInstance hamiltonian_reduction(const SimpleGraph& graph, double hub_cost = 1.0);

// Walk value a Hamiltonian path earns on hamiltonian_reduction(graph, hub_cost).
double hamiltonian_threshold(const SimpleGraph& graph, double hub_cost = 1.0);

}  // namespace bgt
