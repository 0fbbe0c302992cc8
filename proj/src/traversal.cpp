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

#include "bgt/traversal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bgt/errors.hpp"
#include "bgt/rng.hpp"

namespace bgt {

namespace {

constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

std::size_t move_edge(const Topology& topology, NodeId from, NodeId to) {
  topology.check_node(to);
  return topology.edge_index(from, to);
}

}  // namespace

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::size_t TravelerState::visited_count() const {
  return static_cast<std::size_t>(std::count(visited.begin(), visited.end(), true));
}

TravelerState initial_state(const GraphInstance& instance, const BeliefConfig& config) {
  const auto& topology = instance.topology;
  TravelerState state;
  state.current = topology.start();
  state.visited.assign(topology.node_count(), false);
  state.visited[state.current] = true;
  state.belief = prior_belief(instance, config);
  if (config.observe_start_reward) {
    state.belief.reward_obs.add(topology.node(state.current).features,
                                instance.truth.reward[state.current]);
  }
  return state;
}

PolicyContext::PolicyContext(const Topology& topology, const TravelerState& state)
    : topology_(topology),
      state_(state),
      cost_posterior_(state.belief.cost_posterior()),
      reward_posterior_(state.belief.reward_posterior()),
      reward_mean_(topology.node_count(), kUnset),
      reward_var_(topology.node_count(), kUnset),
      cost_mean_(topology.edge_count(), kUnset),
      cost_var_(topology.edge_count(), kUnset) {}

double PolicyContext::reward_mean(NodeId i) const {
  topology_.check_node(i);
  if (std::isnan(reward_mean_[i])) reward_mean_[i] = reward_posterior_.mean(topology_.node(i).features);
  return reward_mean_[i];
}

double PolicyContext::reward_variance(NodeId i) const {
  topology_.check_node(i);
  if (std::isnan(reward_var_[i])) reward_var_[i] = reward_posterior_.variance(topology_.node(i).features);
  return reward_var_[i];
}

double PolicyContext::cost_mean(std::size_t edge) const {
  const auto& e = topology_.edge(edge);
  if (e.key.is_self_loop()) return 0.0;
  if (std::isnan(cost_mean_[edge])) cost_mean_[edge] = cost_posterior_.mean(e.features);
  return cost_mean_[edge];
}

double PolicyContext::cost_variance(std::size_t edge) const {
  const auto& e = topology_.edge(edge);
  if (e.key.is_self_loop()) return 0.0;
  if (std::isnan(cost_var_[edge])) cost_var_[edge] = cost_posterior_.variance(e.features);
  return cost_var_[edge];
}

bool PolicyContext::reward_observed(NodeId i) const {
  return state_.belief.reward_obs.contains(topology_.node(i).features);
}

bool PolicyContext::cost_observed(std::size_t edge) const {
  return state_.belief.cost_obs.contains(topology_.edge(edge).features);
}

double realized_net_gain(const GraphInstance& instance, const TravelerState& state, NodeId j) {
  const std::size_t e = move_edge(instance.topology, state.current, j);
  if (j == state.current) return 0.0;
  const double cost = instance.truth.cost[e];
  return state.is_visited(j) ? -cost : instance.truth.reward[j] - cost;
}

double expected_net_gain(const PolicyContext& ctx, NodeId j) {
  const std::size_t e = move_edge(ctx.topology(), ctx.current(), j);
  if (j == ctx.current()) return 0.0;
  const double cost = ctx.cost_mean(e);
  return ctx.visited(j) ? -cost : ctx.reward_mean(j) - cost;
}

double net_gain_variance(const PolicyContext& ctx, NodeId j) {
  const std::size_t e = move_edge(ctx.topology(), ctx.current(), j);
  if (j == ctx.current()) return 0.0;
  double var = 0.0;
  if (!ctx.visited(j) && !ctx.reward_observed(j)) var += ctx.reward_variance(j);
  if (!ctx.cost_observed(e)) var += ctx.cost_variance(e);
  return var;
}

StepObservation advance(const GraphInstance& instance, TravelerState& state, NodeId j) {
  const auto& topology = instance.topology;
  const std::size_t e = move_edge(topology, state.current, j);
  StepObservation seen;
  if (j != state.current) {
    const double cost = instance.truth.cost[e];
    if (state.belief.cost_obs.add(topology.edge(e).features, cost)) seen.cost = cost;
    if (!state.visited[j]) {
      const double reward = instance.truth.reward[j];
      state.belief.reward_obs.add(topology.node(j).features, reward);
      seen.reward = reward;
      state.visited[j] = true;
    }
  }
  state.current = j;
  ++state.step;
  return seen;
}

TravelerState transition(const GraphInstance& instance, const TravelerState& state, NodeId j) {
  TravelerState next = state;
  advance(instance, next, j);
  return next;
}

NodeId ScriptedPolicy::decide(const PolicyContext& ctx, std::uint64_t) const {
  const auto next = static_cast<std::size_t>(ctx.state().step) + 1;
  return next < walk_.size() ? walk_[next] : ctx.current();
}

std::string ScriptedPolicy::descriptor() const { return "scripted:" + format_walk(walk_); }

std::vector<NodeId> EpisodeLog::walk() const {
  std::vector<NodeId> out;
  if (records.empty()) return out;
  out.push_back(records.front().from);
  for (const auto& r : records) {
    if (r.to != r.from) out.push_back(r.to);
  }
  return out;
}

EpisodeLog run_episode(const GraphInstance& instance, const Policy& policy, std::uint64_t seed,
                       const EpisodeOptions& options) {
  const auto& topology = instance.topology;
  const int horizon = options.horizon.value_or(topology.horizon());
  EpisodeLog log;
  log.instance_id = options.instance_id.empty() ? instance.name : options.instance_id;
  log.policy = policy.descriptor();
  log.seed = seed;

  TravelerState state = initial_state(instance, options.belief);
  for (int t = 0; t < horizon; ++t) {
    const NodeId from = state.current;
    NodeId to = from;
    {
      const PolicyContext ctx(topology, state);
      to = policy.decide(ctx, derive_seed(seed, static_cast<std::uint64_t>(t)));
    }
    if (to >= topology.node_count() || !topology.adjacent(from, to)) {
      log.fault = "policy chose node " + std::to_string(to) + ", not adjacent to " +
                  std::to_string(from) + " at t=" + std::to_string(t);
      break;
    }
    StepRecord record;
    record.t = t;
    record.from = from;
    record.to = to;
    record.realized_gain = realized_net_gain(instance, state, to);
    const auto seen = advance(instance, state, to);
    record.observed_cost = seen.cost;
    record.observed_reward = seen.reward;
    log.total += record.realized_gain;
    log.records.push_back(record);
    if (to == from) break;
  }
  return log;
}

double walk_value(const GraphInstance& instance, const std::vector<NodeId>& walk) {
  if (walk.empty()) return 0.0;
  const auto& topology = instance.topology;
  std::vector<bool> collected(topology.node_count(), false);
  collected[walk.front()] = true;
  double rewards = 0.0;
  double costs = 0.0;
  for (std::size_t k = 1; k < walk.size(); ++k) {
    costs += instance.truth.cost[topology.edge_index(walk[k - 1], walk[k])];
    if (!collected[walk[k]]) {
      collected[walk[k]] = true;
      rewards += instance.truth.reward[walk[k]];
    }
  }
  return rewards - costs;
}

double total_contribution(const GraphInstance& instance, const EpisodeLog& log) {
  const auto& topology = instance.topology;
  std::vector<bool> seen(topology.node_count(), false);
  seen[topology.start()] = true;
  double rewards = 0.0;
  double costs = 0.0;
  for (const auto& r : log.records) {
    costs += instance.truth.cost[topology.edge_index(r.from, r.to)];
    if (!seen[r.to]) {
      seen[r.to] = true;
      rewards += earned_reward(instance, r.to);
    }
  }
  return rewards - costs;
}

nlohmann::ordered_json episode_to_json(const EpisodeLog& log) {
  nlohmann::ordered_json out;
  out["instance"] = log.instance_id;
  out["policy"] = log.policy;
  out["seed"] = log.seed;
  out["steps"] = log.steps();
  out["total"] = log.total;
  out["walk"] = log.walk();
  if (log.fault) out["fault"] = *log.fault;
  auto records = nlohmann::ordered_json::array();
  for (const auto& r : log.records) {
    nlohmann::ordered_json entry;
    entry["t"] = r.t;
    entry["from"] = r.from;
    entry["to"] = r.to;
    entry["gain"] = r.realized_gain;
    if (r.observed_cost) entry["observed_cost"] = *r.observed_cost;
    if (r.observed_reward) entry["observed_reward"] = *r.observed_reward;
    records.push_back(std::move(entry));
  }
  out["records"] = std::move(records);
  return out;
}

std::string episode_csv_header() { return "instance,policy,seed,steps,total"; }

std::string episode_csv_row(const EpisodeLog& log) {
  std::ostringstream out;
  out.precision(12);
  out << csv_field(log.instance_id) << ',' << csv_field(log.policy) << ',' << log.seed << ',' << log.steps() << ','
      << log.total;
  return out.str();
}

}  // namespace bgt
