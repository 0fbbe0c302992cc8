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

#include "bgt/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bgt/errors.hpp"

namespace bgt {

namespace {

std::string node_label(NodeId i) { return std::to_string(i); }

bool connected_ignoring_self_loops(std::size_t n,
                                   const std::vector<std::vector<Neighbor>>& adjacency) {
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId i = stack.back();
    stack.pop_back();
    for (const auto& nb : adjacency[i]) {
      if (!seen[nb.node]) {
        seen[nb.node] = 1;
        ++reached;
        stack.push_back(nb.node);
      }
    }
  }
  return reached == n;
}

}  // namespace

Topology::Topology(std::vector<Node> nodes, std::vector<Edge> edges, NodeId start, int horizon)
    : nodes_(std::move(nodes)), edges_(std::move(edges)), start_(start), horizon_(horizon) {
  if (nodes_.empty()) throw GraphError("instance has no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id != i) {
      throw GraphError("node ids must be dense and ordered: expected " + std::to_string(i) +
                       ", found " + node_label(nodes_[i].id));
    }
  }
  if (start_ >= nodes_.size()) throw GraphError("start node " + node_label(start_) + " out of range");
  if (horizon_ < 1) throw GraphError("horizon must be positive");

  for (auto& edge : edges_) {
    edge.key = EdgeKey(edge.key.a, edge.key.b);
    if (edge.key.b >= nodes_.size()) {
      throw GraphError("edge (" + node_label(edge.key.a) + "," + node_label(edge.key.b) +
                       ") references an unknown node");
    }
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& lhs, const Edge& rhs) { return lhs.key < rhs.key; });
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!edge_lookup_.emplace(edges_[e].key, e).second) {
      throw GraphError("duplicate edge (" + node_label(edges_[e].key.a) + "," +
                       node_label(edges_[e].key.b) + ")");
    }
  }
  for (const auto& node : nodes_) {
    if (!edge_lookup_.contains(EdgeKey(node.id, node.id))) {
      throw GraphError("missing self-loop for node " + node_label(node.id));
    }
  }

  adjacency_.assign(nodes_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const auto key = edges_[e].key;
    adjacency_[key.a].push_back({key.b, e});
    if (!key.is_self_loop()) adjacency_[key.b].push_back({key.a, e});
  }
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end(),
              [](const Neighbor& lhs, const Neighbor& rhs) { return lhs.node < rhs.node; });
  }
  if (!connected_ignoring_self_loops(nodes_.size(), adjacency_)) {
    throw GraphError("graph is disconnected");
  }

  for (auto& node : nodes_) {
    if (node.features.empty()) node.features = default_node_features(*this, node.id);
  }
  for (auto& edge : edges_) {
    if (edge.features.empty()) edge.features = default_edge_features(nodes_, edge.key);
  }
}

const Node& Topology::node(NodeId i) const {
  check_node(i);
  return nodes_[i];
}

std::span<const Neighbor> Topology::neighbors(NodeId i) const {
  check_node(i);
  return adjacency_[i];
}

std::optional<std::size_t> Topology::find_edge(NodeId i, NodeId j) const {
  const auto it = edge_lookup_.find(EdgeKey(i, j));
  if (it == edge_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t Topology::edge_index(NodeId i, NodeId j) const {
  const auto found = find_edge(i, j);
  if (!found) {
    throw GraphError("nodes " + node_label(i) + " and " + node_label(j) + " are not adjacent");
  }
  return *found;
}

void Topology::check_node(NodeId i) const {
  if (i >= nodes_.size()) throw GraphError("unknown node id " + node_label(i));
}

Topology make_topology(const std::vector<Point>& coords,
                       const std::vector<std::pair<NodeId, NodeId>>& links, NodeId start,
                       int horizon) {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  nodes.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    nodes.push_back({static_cast<NodeId>(i), coords[i], {}});
    edges.push_back({EdgeKey(static_cast<NodeId>(i), static_cast<NodeId>(i)), {}});
  }
  for (const auto& [a, b] : links) {
    if (a == b) throw GraphError("links must not contain self-loops");
    edges.push_back({EdgeKey(a, b), {}});
  }
  return Topology(std::move(nodes), std::move(edges), start, horizon);
}

int degree(const Topology& topology, NodeId i) {
  return static_cast<int>(topology.neighbors(i).size());
}

double avg_neighbor_degree(const Topology& topology, NodeId i) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& nb : topology.neighbors(i)) {
    const int multiplicity = nb.node == i ? 2 : 1;
    sum += multiplicity * degree(topology, nb.node);
    count += multiplicity;
  }
  return sum / static_cast<double>(count);
}

FeatureVector default_node_features(const Topology& topology, NodeId i) {
  return {static_cast<double>(degree(topology, i)), avg_neighbor_degree(topology, i)};
}

FeatureVector default_edge_features(const std::vector<Node>& nodes, EdgeKey key) {
  const auto& lo = nodes.at(key.a).coords;
  const auto& hi = nodes.at(key.b).coords;
  return {lo.x, lo.y, hi.x, hi.y};
}

TruthModel default_truth_model(InteractionRewardModel model) {
  TruthModel truth;
  truth.reward = [model](const Topology& topology, NodeId i) {
    return model(degree(topology, i), avg_neighbor_degree(topology, i));
  };
  truth.cost = [](const Topology& topology, const Edge& edge) {
    if (edge.key.is_self_loop()) return 0.0;
    const auto& p = topology.node(edge.key.a).coords;
    const auto& q = topology.node(edge.key.b).coords;
    return std::hypot(p.x - q.x, p.y - q.y);
  };
  return truth;
}

GroundTruth apply_truth(const Topology& topology, const TruthModel& model) {
  GroundTruth truth;
  truth.reward.reserve(topology.node_count());
  for (const auto& node : topology.nodes()) truth.reward.push_back(model.reward(topology, node.id));
  truth.cost.reserve(topology.edge_count());
  for (const auto& edge : topology.edges()) {
    truth.cost.push_back(edge.key.is_self_loop() ? 0.0 : model.cost(topology, edge));
  }
  return truth;
}

GraphInstance with_truth(Topology topology, const TruthModel& model, std::string name) {
  auto truth = apply_truth(topology, model);
  return GraphInstance{std::move(topology), std::move(truth), std::move(name)};
}

double earned_reward(const GraphInstance& instance, NodeId i) {
  instance.topology.check_node(i);
  return i == instance.topology.start() ? 0.0 : instance.truth.reward[i];
}

GraphInstance build_fixture_illustrative() {
  const std::vector<Point> coords{{3, 3}, {2, 0}, {10, 7}, {0, 2}, {8, 1}};
  const std::vector<std::pair<NodeId, NodeId>> links{{0, 1}, {0, 2}, {0, 3}, {0, 4},
                                                     {1, 2}, {1, 4}, {2, 3}, {2, 4}};
  return with_truth(make_topology(coords, links, 0, 500), default_truth_model(), "illustrative");
}

std::vector<NodeId> fixture_walk(const std::string& labels) {
  std::vector<NodeId> walk;
  std::stringstream in(labels);
  std::string token;
  while (std::getline(in, token, '-')) {
    const int label = std::stoi(token);
    if (label < 1) throw GraphError("fixture labels are 1-based: " + token);
    walk.push_back(static_cast<NodeId>(label - 1));
  }
  return walk;
}

std::string format_walk(std::span<const NodeId> walk, NodeId label_offset) {
  std::string out;
  for (std::size_t k = 0; k < walk.size(); ++k) {
    if (k) out += '-';
    out += std::to_string(walk[k] + label_offset);
  }
  return out;
}

bool is_connected(const SimpleGraph& graph) {
  if (graph.node_count == 0) return false;
  std::vector<std::vector<NodeId>> adj(graph.node_count);
  for (const auto& [a, b] : graph.edges) {
    adj.at(a).push_back(b);
    adj.at(b).push_back(a);
  }
  std::vector<char> seen(graph.node_count, 0);
  std::vector<NodeId> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId i = stack.back();
    stack.pop_back();
    for (const NodeId j : adj[i]) {
      if (!seen[j]) {
        seen[j] = 1;
        ++reached;
        stack.push_back(j);
      }
    }
  }
  return reached == graph.node_count;
}

GraphInstance hamiltonian_reduction(const SimpleGraph& graph, double hub_cost) {
  const std::size_t n = graph.node_count;
  if (n == 0) throw GraphError("hamiltonian_reduction needs a non-empty graph");
  for (const auto& [a, b] : graph.edges) {
    if (a == b) throw GraphError("input graph must not contain self-loops");
    if (a >= n || b >= n) throw GraphError("input edge references an unknown node");
  }
  if (!is_connected(graph)) throw GraphError("input graph must be connected");

  // Graph nodes on a circle around the hub; coordinates only feed covariates.
  std::vector<Point> coords;
  for (std::size_t i = 0; i < n; ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    coords.push_back({5.0 + 4.0 * std::cos(angle), 5.0 + 4.0 * std::sin(angle)});
  }
  coords.push_back({5.0, 5.0});
  const auto hub = static_cast<NodeId>(n);

  auto links = graph.edges;
  for (NodeId i = 0; i < n; ++i) links.emplace_back(i, hub);
  // Long enough never to bind: every useful walk collects a node per step.
  auto topology = make_topology(coords, links, hub, static_cast<int>(2 * links.size() + 2));

  TruthModel model;
  model.reward = [hub](const Topology&, NodeId i) { return i == hub ? 0.0 : 2.0; };
  model.cost = [hub, hub_cost](const Topology&, const Edge& edge) {
    return edge.key.b == hub ? hub_cost : 1.0;
  };
  return with_truth(std::move(topology), model, "hamiltonian-reduction");
}

double hamiltonian_threshold(const SimpleGraph& graph, double hub_cost) {
  const auto n = static_cast<double>(graph.node_count);
  return 2.0 * n - hub_cost - (n - 1.0);
}

}  // namespace bgt
