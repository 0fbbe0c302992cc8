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

#include <cmath>

#include "bgt/bridges.hpp"
#include "bgt/errors.hpp"
#include "bgt/generator.hpp"
#include "bgt/oracle.hpp"
#include "bgt/policies.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace bgt;

namespace {

OracleOptions unpruned() {
  OracleOptions o;
  o.use_circuit_rule = false;
  o.use_bridge_rule = false;
  o.use_acyclic_caps = false;
  return o;
}

SearchNode node_from_walk(const Topology& t, const std::vector<NodeId>& walk) {
  SearchNode n;
  n.walk = walk;
  n.current = walk.back();
  n.edge_counts.assign(t.edge_count(), 0);
  for (std::size_t k = 1; k < walk.size(); ++k) {
    const auto e = t.edge_index(walk[k - 1], walk[k]);
    n.edges.push_back(e);
    ++n.edge_counts[e];
  }
  return n;
}

GraphInstance from_links(std::size_t n, std::vector<std::pair<NodeId, NodeId>> links) {
  std::vector<Point> coords;
  for (std::size_t i = 0; i < n; ++i) {
    coords.push_back({std::cos(static_cast<double>(i)), std::sin(static_cast<double>(i))});
  }
  return with_truth(make_topology(coords, links, 0));
}

}  // namespace

TEST_CASE("fixture optimum") {
  const auto fx = build_fixture_illustrative();
  const auto r = clairvoyant_exact(fx);
  CHECK(std::abs(r.value - 219.60) < 0.01);
  CHECK(r.proven);
  CHECK_FALSE(r.length_cap_active);
  CHECK(std::abs(walk_value(fx, r.walk) - r.value) < 1e-9);
  CHECK(format_walk(r.walk, 1) == "1-4-1-2-5-3");
  CHECK(dominated_circuit_check(r.walk, fx.topology).empty());
  CHECK(std::abs(testing::dp_best_walk(fx, 18) - r.value) < 1e-9);
  const auto doc = oracle_to_json(r, 1);
  CHECK(doc["proven"] == true);
  CHECK(doc["walk"][1] == 4);
}

TEST_CASE("single node optimum is the empty walk") {
  const Topology t({{0, {0, 0}, {}}}, {{EdgeKey(0, 0), {}}}, 0, 5);
  const auto r = clairvoyant_exact(with_truth(t));
  CHECK(r.value == 0.0);
  CHECK(r.walk == std::vector<NodeId>{0});
  CHECK(r.proven);
}

TEST_CASE("expansion cap leaves the proof flag clear") {
  OracleOptions o;
  o.max_expansions = 5;
  const auto r = clairvoyant_exact(build_fixture_illustrative(), o);
  CHECK_FALSE(r.proven);
  CHECK(std::abs(walk_value(build_fixture_illustrative(), r.walk) - r.value) < 1e-9);
}

TEST_CASE("pruned search equals brute force") {
  Rng rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng.below(5);
    const double p = trial % 2 ? 0.8 : 0.4;
    const auto inst = erdos_renyi(n, p, rng.next());
    const int cap = 2 * static_cast<int>(inst.topology.non_self_edge_count()) + 2;
    const auto pruned = clairvoyant_exact(inst);
    const auto plain = clairvoyant_exact(inst, unpruned());
    CHECK(pruned.proven);
    CHECK(std::abs(pruned.value - plain.value) < 1e-9);
    CHECK(std::abs(pruned.value - testing::dp_best_walk(inst, cap)) < 1e-9);
    CHECK(std::abs(walk_value(inst, pruned.walk) - pruned.value) < 1e-9);
    CHECK(dominated_circuit_check(pruned.walk, inst.topology).empty());
  }
}

TEST_CASE("bounds are admissible at every expanded node") {
  Rng rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = erdos_renyi(4, 0.6, rng.next());
    const int cap = 2 * static_cast<int>(inst.topology.non_self_edge_count()) + 2;
    OracleOptions o;
    int checked = 0;
    o.on_expand = [&](const SearchNode& node, double bound) {
      if (checked >= 40) return;
      ++checked;
      // Best completion from this node, by brute force on a re-rooted copy
      // whose collected nodes carry no reward.
      auto copy = inst;
      for (NodeId i = 0; i < copy.topology.node_count(); ++i) {
        if (node.visited >> i & 1) copy.truth.reward[i] = 0.0;
      }
      std::vector<Node> nodes = copy.topology.nodes();
      std::vector<Edge> edges = copy.topology.edges();
      GraphInstance rooted{Topology(nodes, edges, node.current, 500), copy.truth, "rooted"};
      const double remaining = testing::dp_best_walk(rooted, cap - static_cast<int>(node.edges.size()));
      CHECK(bound >= node.value + remaining - 1e-9);
    };
    clairvoyant_exact(inst, o);
    CHECK(checked > 0);
  }
}

TEST_CASE("repeated circuit rule") {
  const auto tri = from_links(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(prune_repeated_circuit(node_from_walk(tri.topology, {0, 1, 2, 0, 1, 2, 0})));
  CHECK_FALSE(prune_repeated_circuit(node_from_walk(tri.topology, {0, 1, 2, 0})));
  CHECK_FALSE(prune_repeated_circuit(node_from_walk(tri.topology, {0, 1, 0, 1})));
  // The reverse orientation uses the same edge set.
  CHECK(prune_repeated_circuit(node_from_walk(tri.topology, {0, 1, 2, 0, 2, 1, 0})));
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = erdos_renyi(2 + rng.below(5), 0.6, rng.next());
    OracleOptions only_circuit = unpruned();
    only_circuit.use_circuit_rule = true;
    CHECK(std::abs(clairvoyant_exact(inst, only_circuit).value - clairvoyant_exact(inst, unpruned()).value) < 1e-9);
  }
}

TEST_CASE("bridges") {
  const auto path = from_links(3, {{0, 1}, {1, 2}});
  auto b = find_bridges(path.topology);
  CHECK(b[path.topology.edge_index(0, 1)]);
  CHECK(b[path.topology.edge_index(1, 2)]);
  CHECK_FALSE(b[path.topology.self_loop(1)]);
  const auto tri = from_links(3, {{0, 1}, {1, 2}, {0, 2}});
  for (const bool x : find_bridges(tri.topology)) CHECK_FALSE(x);

  const auto p = find_bridges(path.topology);
  CHECK(prune_bridge_count(node_from_walk(path.topology, {0, 1, 0, 1}), p));
  CHECK_FALSE(prune_bridge_count(node_from_walk(path.topology, {0, 1, 2, 1, 0}), p));
  CHECK_FALSE(prune_bridge_count(node_from_walk(tri.topology, {0, 1, 0, 1, 0, 1}), find_bridges(tri.topology)));

  Rng rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = erdos_renyi(3 + rng.below(9), 0.15 + 0.3 * rng.uniform01(), rng.next());
    CHECK(find_bridges(inst.topology) == testing::bridges_by_removal(inst.topology));
  }
}

TEST_CASE("acyclic caps") {
  const auto path = from_links(3, {{0, 1}, {1, 2}});
  CHECK(acyclic_walk_cap(path.topology) == 4);
  const auto star = from_links(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(acyclic_walk_cap(star.topology) == 6);
  CHECK(2 * degree(star.topology, 0) == 8);
  CHECK_THROWS_AS(acyclic_walk_cap(from_links(3, {{0, 1}, {1, 2}, {0, 2}}).topology), GraphError);
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tree = testing::random_tree(2 + rng.below(6), rng);
    const auto capped = clairvoyant_exact(tree);
    auto o = unpruned();
    const auto plain = clairvoyant_exact(tree, o);
    CHECK(capped.proven);
    CHECK(std::abs(capped.value - plain.value) < 1e-9);
    CHECK(static_cast<int>(capped.walk.size()) - 1 <= acyclic_walk_cap(tree.topology));
  }
}

TEST_CASE("dominated circuit audit") {
  // Triangle 0-1-2 and square 0-1-3-2 around node 0 share node set {0,1,2}.
  const auto g = from_links(4, {{0, 1}, {1, 2}, {0, 2}, {1, 3}, {2, 3}});
  const auto v = dominated_circuit_check({0, 1, 2, 0, 1, 3, 2, 0}, g.topology);
  REQUIRE(v.size() == 1);
  CHECK(v[0].smaller_first == 0);
  CHECK(v[0].smaller_last == 3);
  CHECK(v[0].larger_first == 3);
  CHECK(dominated_circuit_check({0, 1, 2, 0}, g.topology).empty());
  CHECK(dominated_circuit_check({0, 1, 3}, g.topology).empty());
}

TEST_CASE("hamiltonian decisions") {
  CHECK(hamiltonian_decision(SimpleGraph{3, {{0, 1}, {1, 2}}}) == Decision::kYes);
  CHECK(hamiltonian_decision(SimpleGraph{4, {{0, 1}, {0, 2}, {0, 3}}}) == Decision::kNo);
  CHECK(hamiltonian_decision(SimpleGraph{1, {}}) == Decision::kYes);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& g : testing::all_connected_graphs(n)) {
      const bool expected = testing::has_hamiltonian_path(g);
      CHECK(hamiltonian_decision(g) == (expected ? Decision::kYes : Decision::kNo));
    }
  }
  OracleOptions tiny;
  tiny.max_expansions = 3;
  CHECK(hamiltonian_decision(SimpleGraph{4, {{0, 1}, {0, 2}, {0, 3}}}, tiny) == Decision::kIndeterminate);
}

TEST_CASE("free hub edges break the reduction") {
  // With zero-cost hub edges the traveler bounces through the hub and collects
  // every reward, so a star without a Hamiltonian path still reaches the
  // threshold.
  const SimpleGraph star{4, {{0, 1}, {0, 2}, {0, 3}}};
  const auto free_hub = hamiltonian_reduction(star, 0.0);
  const auto r = clairvoyant_exact(free_hub);
  CHECK(r.value == doctest::Approx(8.0));
  CHECK(r.value >= hamiltonian_threshold(star, 0.0));
  CHECK_FALSE(testing::has_hamiltonian_path(star));
}

TEST_CASE("policies never beat the oracle") {
  Rng rng(55);
  for (int trial = 0; trial < 15; ++trial) {
    const auto inst = erdos_renyi(3 + rng.below(4), 0.5, rng.next());
    const double best = clairvoyant_exact(inst).value;
    for (const char* spec : {"M", "UCB:lambda=1", "HP:alpha=1,H=3", "SC:beta=10"}) {
      CHECK(run_episode(inst, *make_policy(parse_policy(spec)), 1).total <= best + 1e-6);
    }
  }
}
