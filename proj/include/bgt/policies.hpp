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
#include <vector>

#include "bgt/policy_params.hpp"
#include "bgt/traversal.hpp"

namespace bgt {

// Arg-max of expected_net_gain over the neighbors and the current node; the
// lowest node id wins ties.
NodeId myopic_decide(const PolicyContext& ctx);

// Arg-max of expected_net_gain + lambda * net_gain_variance, same tie rule.
NodeId ucb_decide(const PolicyContext& ctx, double lambda);

// A candidate H-path: the hops after the current node, no node repeated and the
// current node never re-entered. A plan shorter than H ends in self-loop
// padding, so the traveler may plan to stop early. Empty is the stay plan.
struct PlannedPath {
  std::vector<NodeId> hops;
  double objective = 0.0;
};

bool is_feasible_plan(const PolicyContext& ctx, const std::vector<NodeId>& hops, int horizon);

// Every feasible plan of length <= H, plus the stay plan. Guarded to H <= 6 or
// at most 12 nodes.
std::vector<PlannedPath> enumerate_paths(const PolicyContext& ctx, int horizon);

// Sum of expected gains along the plan with beliefs frozen at t, plus
// alpha * (det cov_c over the plan's unobserved edges + det cov_r over its
// unvisited, unobserved nodes). A determinant over an empty set is 0.
double hp_objective(const std::vector<NodeId>& hops, const PolicyContext& ctx, double alpha);

// Greedy initial path without repeats (random restarts when greedy dead-ends
// short of H), then first-improvement search over substitutions of adjacent
// edge pairs, plus truncation and extension of the tail, until no move
// improves the objective. `trace`, if given,
// receives the objective after every accepted move, starting with the initial
// path.
PlannedPath hp_neighborhood_search(const PolicyContext& ctx, double alpha, int horizon,
                                   std::uint64_t seed, std::vector<double>* trace = nullptr);

// Optimum of the H-path problem by enumeration.
PlannedPath hp_exhaustive(const PolicyContext& ctx, double alpha, int horizon);

NodeId hp_decide(const PolicyContext& ctx, double alpha, int horizon, std::uint64_t seed,
                 HpSolver solver = HpSolver::kNeighborhoodSearch);

// Sum of expected gains along a walk (node sequence starting at the current
// node) with beliefs frozen at t: rewards once per newly visited node, cost on
// every traversal. Throws GraphError on a disconnected walk.
double walk_expected_gain(const std::vector<NodeId>& walk, const PolicyContext& ctx);

struct LabelWalk {
  std::vector<NodeId> walk;  // starts at the current node
  double value = 0.0;        // walk_expected_gain of `walk`
  double label = 0.0;        // the raw label that selected it
};

// Randomized Bellman-Ford style label setting over the directed edge list
// (self-loops excluded), repeated `beta` times with per-restart shuffles.
// Labels longer than `walk_cap` hops are not extended.
LabelWalk sc_label_setting(const PolicyContext& ctx, int beta, std::uint64_t seed,
                           std::optional<int> walk_cap = std::nullopt);

// First node of the label-setting walk; stays when the walk is empty or its
// recomputed value is not positive.
NodeId sc_decide(const PolicyContext& ctx, int beta, std::uint64_t seed,
                 std::optional<int> walk_cap = std::nullopt);

class MyopicPolicy : public Policy {
 public:
  NodeId decide(const PolicyContext& ctx, std::uint64_t) const override { return myopic_decide(ctx); }
  std::string descriptor() const override { return "M"; }
};

class UcbPolicy : public Policy {
 public:
  explicit UcbPolicy(double lambda) : lambda_(lambda) {}
  NodeId decide(const PolicyContext& ctx, std::uint64_t) const override {
    return ucb_decide(ctx, lambda_);
  }
  std::string descriptor() const override;

 private:
  double lambda_;
};

class HPathPolicy : public Policy {
 public:
  HPathPolicy(double alpha, int horizon, HpSolver solver)
      : alpha_(alpha), horizon_(horizon), solver_(solver) {}
  NodeId decide(const PolicyContext& ctx, std::uint64_t seed) const override {
    return hp_decide(ctx, alpha_, horizon_, seed, solver_);
  }
  std::string descriptor() const override;

 private:
  double alpha_;
  int horizon_;
  HpSolver solver_;
};

class SpeculatingClairvoyantPolicy : public Policy {
 public:
  SpeculatingClairvoyantPolicy(int beta, std::optional<int> walk_cap)
      : beta_(beta), walk_cap_(walk_cap) {}
  NodeId decide(const PolicyContext& ctx, std::uint64_t seed) const override {
    return sc_decide(ctx, beta_, seed, walk_cap_);
  }
  std::string descriptor() const override;

 private:
  int beta_;
  std::optional<int> walk_cap_;
};

}  // namespace bgt
