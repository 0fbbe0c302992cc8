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

#include "bgt/belief.hpp"
#include "bgt/graph.hpp"
#include "json.hpp"

namespace bgt {

// S_t: position, visited set, and the belief housing the observed cost and
// reward pairs.
struct TravelerState {
  NodeId current = 0;
  std::vector<bool> visited;
  BeliefState belief;
  int step = 0;

  bool is_visited(NodeId i) const { return visited.at(i); }
  std::size_t visited_count() const;
};

// Start node visited; its reward observed when the config asks for it.
TravelerState initial_state(const GraphInstance& instance, const BeliefConfig& config = {});

// What a policy may see: topology and traveler state. Truths are reachable only
// through recorded observations. Posterior moments are cached per context, so
// a context must not be shared between threads.
class PolicyContext {
 public:
  PolicyContext(const Topology& topology, const TravelerState& state);

  const Topology& topology() const { return topology_; }
  const TravelerState& state() const { return state_; }
  NodeId current() const { return state_.current; }
  bool visited(NodeId i) const { return state_.visited[i]; }

  double reward_mean(NodeId i) const;
  double reward_variance(NodeId i) const;
  // Self-loops are known to cost nothing: mean and variance 0.
  double cost_mean(std::size_t edge) const;
  double cost_variance(std::size_t edge) const;

  bool reward_observed(NodeId i) const;
  bool cost_observed(std::size_t edge) const;

  const GpPosterior& cost_posterior() const { return cost_posterior_; }
  const GpPosterior& reward_posterior() const { return reward_posterior_; }

 private:
  const Topology& topology_;
  const TravelerState& state_;
  GpPosterior cost_posterior_;
  GpPosterior reward_posterior_;
  mutable std::vector<double> reward_mean_;
  mutable std::vector<double> reward_var_;
  mutable std::vector<double> cost_mean_;
  mutable std::vector<double> cost_var_;
};

// g(S_t, j) under the truths: r - c for a first visit, -c for a revisit, 0 for
// staying. Throws GraphError when j is not adjacent to the current node.
double realized_net_gain(const GraphInstance& instance, const TravelerState& state, NodeId j);

// Posterior expectation of the same cases.
double expected_net_gain(const PolicyContext& ctx, NodeId j);

// Posterior variance of the net gain. The reward term is present only for an
// unvisited j whose features are not yet in the reward observations; the cost
// term only when the edge features are not in the cost observations.
double net_gain_variance(const PolicyContext& ctx, NodeId j);

struct StepObservation {
  std::optional<double> cost;
  std::optional<double> reward;
};

// In-place transition; returns what was newly observed.
StepObservation advance(const GraphInstance& instance, TravelerState& state, NodeId j);
TravelerState transition(const GraphInstance& instance, const TravelerState& state, NodeId j);

class Policy {
 public:
  virtual ~Policy() = default;
  // Pure in (ctx, seed).
  virtual NodeId decide(const PolicyContext& ctx, std::uint64_t seed) const = 0;
  virtual std::string descriptor() const = 0;
};

// Replays a fixed walk (node sequence starting at the start node), then stays.
class ScriptedPolicy : public Policy {
 public:
  explicit ScriptedPolicy(std::vector<NodeId> walk) : walk_(std::move(walk)) {}
  NodeId decide(const PolicyContext& ctx, std::uint64_t seed) const override;
  std::string descriptor() const override;

 private:
  std::vector<NodeId> walk_;
};

struct StepRecord {
  int t = 0;
  NodeId from = 0;
  NodeId to = 0;
  double realized_gain = 0.0;
  std::optional<double> observed_cost;
  std::optional<double> observed_reward;
};

struct EpisodeLog {
  std::string instance_id;
  std::string policy;
  std::uint64_t seed = 0;
  std::vector<StepRecord> records;
  double total = 0.0;
  // Set when the policy returned a non-adjacent node; the episode stopped there.
  std::optional<std::string> fault;

  // Node sequence from the start, excluding the terminal stay.
  std::vector<NodeId> walk() const;
  int steps() const { return static_cast<int>(records.size()); }
};

struct EpisodeOptions {
  BeliefConfig belief;
  std::string instance_id;
  // Overrides the instance horizon when set.
  std::optional<int> horizon;
};

// Runs until the policy stays put (absorbing self-loop) or the horizon is
// reached. Decision epoch t receives derive_seed(seed, t).
EpisodeLog run_episode(const GraphInstance& instance, const Policy& policy, std::uint64_t seed,
                       const EpisodeOptions& options = {});

// Set-based recomputation from the truths: distinct non-start nodes' rewards
// minus the cost of every traversal.
double total_contribution(const GraphInstance& instance, const EpisodeLog& log);
double walk_value(const GraphInstance& instance, const std::vector<NodeId>& walk);

nlohmann::ordered_json episode_to_json(const EpisodeLog& log);
std::string episode_csv_header();
// RFC 4180 quoting when the value contains a comma, quote or newline.
std::string csv_field(const std::string& value);
std::string episode_csv_row(const EpisodeLog& log);

}  // namespace bgt
