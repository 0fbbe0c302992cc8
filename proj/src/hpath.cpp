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
#include <cmath>

#include "bgt/errors.hpp"
#include "bgt/policies.hpp"
#include "bgt/rng.hpp"

namespace bgt {

namespace {

constexpr int kRestartAttempts = 32;
constexpr int kMaxSearchRounds = 10000;

bool in_plan(const PolicyContext& ctx, const std::vector<NodeId>& hops, NodeId q) {
  return q == ctx.current() || std::find(hops.begin(), hops.end(), q) != hops.end();
}

NodeId tail(const PolicyContext& ctx, const std::vector<NodeId>& hops) {
  return hops.empty() ? ctx.current() : hops.back();
}

std::vector<NodeId> admissible_extensions(const PolicyContext& ctx, const std::vector<NodeId>& hops) {
  std::vector<NodeId> out;
  for (const auto& nb : ctx.topology().neighbors(tail(ctx, hops))) {
    if (!in_plan(ctx, hops, nb.node)) out.push_back(nb.node);
  }
  return out;
}

double hop_gain(const PolicyContext& ctx, NodeId from, NodeId to) {
  const double cost = ctx.cost_mean(ctx.topology().edge_index(from, to));
  return ctx.visited(to) ? -cost : ctx.reward_mean(to) - cost;
}

// Extends by the best immediate hop until H hops or a dead end.
void greedy_extend(const PolicyContext& ctx, std::vector<NodeId>& hops, int horizon) {
  while (static_cast<int>(hops.size()) < horizon) {
    const NodeId from = tail(ctx, hops);
    bool found = false;
    NodeId best = 0;
    double best_gain = 0.0;
    for (const NodeId q : admissible_extensions(ctx, hops)) {
      const double g = hop_gain(ctx, from, q);
      if (!found || g > best_gain) {
        found = true;
        best = q;
        best_gain = g;
      }
    }
    if (!found) return;
    hops.push_back(best);
  }
}

// Total order used to pick among plans: objective, then first node (the
// current node for the stay plan), then the hop sequence.
bool preferred(const PlannedPath& a, const PlannedPath& b, NodeId current) {
  if (a.objective != b.objective) return a.objective > b.objective;
  const NodeId fa = a.hops.empty() ? current : a.hops.front();
  const NodeId fb = b.hops.empty() ? current : b.hops.front();
  if (fa != fb) return fa < fb;
  return a.hops < b.hops;
}

bool improves(double candidate, double incumbent) {
  return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

void enumerate_from(const PolicyContext& ctx, int horizon, std::vector<NodeId>& hops,
                    std::vector<PlannedPath>& out) {
  if (!hops.empty()) out.push_back({hops, 0.0});
  if (static_cast<int>(hops.size()) == horizon) return;
  for (const NodeId q : admissible_extensions(ctx, hops)) {
    hops.push_back(q);
    enumerate_from(ctx, horizon, hops, out);
    hops.pop_back();
  }
}

}  // namespace

bool is_feasible_plan(const PolicyContext& ctx, const std::vector<NodeId>& hops, int horizon) {
  if (static_cast<int>(hops.size()) > horizon) return false;
  std::vector<NodeId> prefix;
  for (const NodeId h : hops) {
    if (h >= ctx.topology().node_count()) return false;
    if (!ctx.topology().adjacent(tail(ctx, prefix), h) || in_plan(ctx, prefix, h)) return false;
    prefix.push_back(h);
  }
  return true;
}

double hp_objective(const std::vector<NodeId>& hops, const PolicyContext& ctx, double alpha) {
  const auto& topology = ctx.topology();
  double expected = 0.0;
  NodeId prev = ctx.current();
  std::vector<std::vector<double>> cost_queries;
  std::vector<std::vector<double>> reward_queries;
  for (const NodeId h : hops) {
    const std::size_t e = topology.edge_index(prev, h);
    expected += hop_gain(ctx, prev, h);
    if (!ctx.cost_observed(e)) cost_queries.push_back(topology.edge(e).features);
    if (!ctx.visited(h) && !ctx.reward_observed(h)) reward_queries.push_back(topology.node(h).features);
    prev = h;
  }
  if (alpha == 0.0) return expected;
  double scatter = 0.0;
  if (!cost_queries.empty()) scatter += generalized_variance(ctx.cost_posterior().joint(cost_queries));
  if (!reward_queries.empty()) {
    scatter += generalized_variance(ctx.reward_posterior().joint(reward_queries));
  }
  return expected + alpha * scatter;
}

std::vector<PlannedPath> enumerate_paths(const PolicyContext& ctx, int horizon) {
  if (horizon < 1) throw GraphError("H-path horizon must be >= 1");
  if (horizon > 6 && ctx.topology().node_count() > 12) {
    throw GraphError("exhaustive H-path enumeration is limited to H <= 6 or at most 12 nodes");
  }
  std::vector<PlannedPath> out;
  out.push_back({{}, 0.0});
  std::vector<NodeId> hops;
  enumerate_from(ctx, horizon, hops, out);
  return out;
}

PlannedPath hp_exhaustive(const PolicyContext& ctx, double alpha, int horizon) {
  auto plans = enumerate_paths(ctx, horizon);
  PlannedPath best = plans.front();
  for (auto& plan : plans) {
    plan.objective = hp_objective(plan.hops, ctx, alpha);
    if (preferred(plan, best, ctx.current())) best = plan;
  }
  return best;
}

PlannedPath hp_neighborhood_search(const PolicyContext& ctx, double alpha, int horizon,
                                   std::uint64_t seed, std::vector<double>* trace) {
  if (horizon < 1) throw GraphError("H-path horizon must be >= 1");
  const auto& topology = ctx.topology();
  Rng rng(seed);

  PlannedPath plan;
  greedy_extend(ctx, plan.hops, horizon);
  plan.objective = hp_objective(plan.hops, ctx, alpha);
  if (static_cast<int>(plan.hops.size()) < horizon && !plan.hops.empty()) {
    for (int attempt = 0; attempt < kRestartAttempts; ++attempt) {
      std::vector<NodeId> hops;
      while (static_cast<int>(hops.size()) < horizon) {
        const auto next = admissible_extensions(ctx, hops);
        if (next.empty()) break;
        hops.push_back(next[rng.below(next.size())]);
      }
      if (static_cast<int>(hops.size()) == horizon) {
        const double obj = hp_objective(hops, ctx, alpha);
        if (obj > plan.objective) plan = {std::move(hops), obj};
        break;
      }
    }
  }
  if (trace) trace->push_back(plan.objective);

  auto try_candidate = [&](std::vector<NodeId> hops) {
    if (hops.empty() || !is_feasible_plan(ctx, hops, horizon)) return false;
    const double obj = hp_objective(hops, ctx, alpha);
    if (!improves(obj, plan.objective)) return false;
    plan = {std::move(hops), obj};
    if (trace) trace->push_back(obj);
    return true;
  };

  // Removes the edge pair around hop k and tries reconnections in a fixed order.
  auto improve_at = [&](std::size_t k) {
    const auto& hops = plan.hops;
    const std::size_t len = hops.size();
    const NodeId prev = k == 0 ? ctx.current() : hops[k - 1];
    const bool has_next = k + 1 < len;
    const std::vector<NodeId> prefix(hops.begin(), hops.begin() + static_cast<std::ptrdiff_t>(k));
    for (const auto& nb : topology.neighbors(prev)) {
      const NodeId q = nb.node;
      if (q == hops[k] || in_plan(ctx, prefix, q)) continue;
      if (has_next) {
        // Substitute the middle node: prev -> q -> next.
        const NodeId next = hops[k + 1];
        if (q != next && topology.adjacent(q, next) &&
            std::find(hops.begin() + static_cast<std::ptrdiff_t>(k) + 1, hops.end(), q) == hops.end()) {
          auto candidate = hops;
          candidate[k] = q;
          if (try_candidate(std::move(candidate))) return true;
        }
        // Replace the final pair with a fresh two-hop tail: prev -> q -> q2.
        if (k + 2 == len) {
          for (const auto& nb2 : topology.neighbors(q)) {
            const NodeId q2 = nb2.node;
            if (q2 == q || q2 == prev || in_plan(ctx, prefix, q2)) continue;
            if (q == hops[k] && q2 == hops[k + 1]) continue;
            auto candidate = prefix;
            candidate.push_back(q);
            candidate.push_back(q2);
            if (try_candidate(std::move(candidate))) return true;
          }
        }
      } else {
        // Last hop: substitute the final edge.
        auto candidate = prefix;
        candidate.push_back(q);
        if (try_candidate(std::move(candidate))) return true;
      }
    }
    // Reorder: prev -> next -> mid -> (rest).
    if (has_next && topology.adjacent(prev, hops[k + 1]) &&
        (k + 2 >= len || topology.adjacent(hops[k], hops[k + 2]))) {
      auto candidate = hops;
      std::swap(candidate[k], candidate[k + 1]);
      if (try_candidate(std::move(candidate))) return true;
    }
    // Tail moves: stop after hop k, or extend a short plan by one hop.
    if (k + 1 < len) {
      if (try_candidate(std::vector<NodeId>(hops.begin(), hops.begin() + static_cast<std::ptrdiff_t>(k) + 1))) {
        return true;
      }
    } else if (static_cast<int>(len) < horizon) {
      for (const NodeId q : admissible_extensions(ctx, hops)) {
        auto candidate = hops;
        candidate.push_back(q);
        if (try_candidate(std::move(candidate))) return true;
      }
    }
    return false;
  };

  for (int round = 0; round < kMaxSearchRounds; ++round) {
    bool improved = false;
    for (std::size_t k = 0; k < plan.hops.size(); ++k) improved = improve_at(k) || improved;
    if (!improved) break;
  }
  return plan;
}

NodeId hp_decide(const PolicyContext& ctx, double alpha, int horizon, std::uint64_t seed,
                 HpSolver solver) {
  PlannedPath plan = solver == HpSolver::kExhaustive
                         ? hp_exhaustive(ctx, alpha, horizon)
                         : hp_neighborhood_search(ctx, alpha, horizon, seed);
  const PlannedPath stay{{}, 0.0};
  if (!preferred(plan, stay, ctx.current())) return ctx.current();
  return plan.hops.empty() ? ctx.current() : plan.hops.front();
}

}  // namespace bgt
