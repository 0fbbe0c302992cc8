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

#include <algorithm>
#include <limits>

#include "bgt/errors.hpp"
#include "bgt/policies.hpp"
#include "bgt/rng.hpp"

namespace bgt {

namespace {

struct Arc {
  NodeId from;
  NodeId to;
  std::size_t edge;
};

}  // namespace

double walk_expected_gain(const std::vector<NodeId>& walk, const PolicyContext& ctx) {
  if (walk.empty()) return 0.0;
  const auto& topology = ctx.topology();
  if (walk.front() != ctx.current()) throw GraphError("walk must start at the current node");
  std::vector<bool> visited = ctx.state().visited;
  double total = 0.0;
  for (std::size_t k = 1; k < walk.size(); ++k) {
    const NodeId from = walk[k - 1];
    const NodeId to = walk[k];
    if (to >= topology.node_count() || !topology.adjacent(from, to)) {
      throw GraphError("walk is not connected at position " + std::to_string(k));
    }
    if (from == to) continue;
    total -= ctx.cost_mean(topology.edge_index(from, to));
    if (!visited[to]) {
      total += ctx.reward_mean(to);
      visited[to] = true;
    }
  }
  return total;
}

LabelWalk sc_label_setting(const PolicyContext& ctx, int beta, std::uint64_t seed,
                           std::optional<int> walk_cap) {
  if (beta < 1) throw GraphError("label setting needs beta >= 1");
  const auto& topology = ctx.topology();
  const std::size_t n = topology.node_count();
  const std::size_t cap = walk_cap ? static_cast<std::size_t>(*walk_cap)
                                   : 2 * topology.non_self_edge_count();
  const NodeId start = ctx.current();

  std::vector<Arc> base;
  for (std::size_t e = 0; e < topology.edge_count(); ++e) {
    const auto& key = topology.edge(e).key;
    if (key.is_self_loop()) continue;
    base.push_back({key.a, key.b, e});
    base.push_back({key.b, key.a, e});
  }
  std::vector<double> gain_new(n);
  for (NodeId j = 0; j < n; ++j) gain_new[j] = ctx.visited(j) ? 0.0 : ctx.reward_mean(j);
  std::vector<double> cost(topology.edge_count(), 0.0);
  for (const auto& arc : base) cost[arc.edge] = ctx.cost_mean(arc.edge);

  constexpr double kUnreached = -std::numeric_limits<double>::infinity();
  bool have_best = false;
  double best_label = 0.0;
  std::vector<NodeId> best_walk;

  for (int k = 0; k < beta; ++k) {
    std::vector<Arc> arcs = base;
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(k)));
    rng.shuffle(arcs);

    std::vector<double> z(n, kUnreached);
    std::vector<std::vector<NodeId>> omega(n);
    z[start] = 0.0;
    for (std::size_t sweep = 0; sweep < n; ++sweep) {
      bool changed = false;
      for (const auto& arc : arcs) {
        if (z[arc.from] == kUnreached || omega[arc.from].size() >= cap) continue;
        const auto& prefix = omega[arc.from];
        const bool fresh = !ctx.visited(arc.to) &&
                           std::find(prefix.begin(), prefix.end(), arc.to) == prefix.end();
        const double delta = (fresh ? gain_new[arc.to] : 0.0) - cost[arc.edge];
        if (z[arc.from] + delta > z[arc.to]) {
          z[arc.to] = z[arc.from] + delta;
          std::vector<NodeId> next = prefix;
          next.push_back(arc.from);
          omega[arc.to] = std::move(next);
          changed = true;
        }
      }
      if (!changed) break;
    }
    for (NodeId i = 0; i < n; ++i) {
      if (z[i] == kUnreached) continue;
      if (!have_best || z[i] > best_label) {
        have_best = true;
        best_label = z[i];
        best_walk = omega[i];
        best_walk.push_back(i);
      }
    }
  }

  LabelWalk out;
  out.label = best_label;
  out.walk = best_walk.size() > 1 ? best_walk : std::vector<NodeId>{start};
  out.value = walk_expected_gain(out.walk, ctx);
  return out;
}

NodeId sc_decide(const PolicyContext& ctx, int beta, std::uint64_t seed, std::optional<int> walk_cap) {
  const LabelWalk best = sc_label_setting(ctx, beta, seed, walk_cap);
  if (best.walk.size() < 2 || best.value <= 0.0) return ctx.current();
  return best.walk[1];
}

}  // namespace bgt
