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

#include "bgt/errors.hpp"
#include "bgt/generator.hpp"
#include "bgt/policies.hpp"
#include "bgt/traversal.hpp"
#include "doctest.h"

using namespace bgt;

namespace {

BeliefConfig without_start_reward() {
  BeliefConfig cfg;
  cfg.observe_start_reward = false;
  return cfg;
}

// Returns a fixed node regardless of the state.
class FixedPolicy : public Policy {
 public:
  explicit FixedPolicy(NodeId j) : j_(j) {}
  NodeId decide(const PolicyContext&, std::uint64_t) const override { return j_; }
  std::string descriptor() const override { return "fixed"; }

 private:
  NodeId j_;
};

}  // namespace

TEST_CASE("initial state") {
  const auto fx = build_fixture_illustrative();
  const auto s = initial_state(fx);
  CHECK(s.current == 0);
  CHECK(s.is_visited(0));
  CHECK(s.visited_count() == 1);
  CHECK(s.belief.reward_obs.size() == 1);
  CHECK(initial_state(fx, without_start_reward()).belief.reward_obs.size() == 0);
}

TEST_CASE("expected gain at t=0 is the difference of grand means") {
  const auto fx = build_fixture_illustrative();
  const auto s = initial_state(fx, without_start_reward());
  const PolicyContext ctx(fx.topology, s);
  for (const NodeId j : {1u, 2u, 3u, 4u}) {
    CHECK(std::abs(expected_net_gain(ctx, j) - 56.51) < 0.005);
    CHECK(net_gain_variance(ctx, j) == doctest::Approx(2.0));
  }
  CHECK(expected_net_gain(ctx, 0) == 0.0);
  CHECK(net_gain_variance(ctx, 0) == 0.0);
}

TEST_CASE("gain cases follow the observations") {
  const auto fx = build_fixture_illustrative();
  auto s = initial_state(fx, without_start_reward());
  const auto seen = advance(fx, s, 3);
  REQUIRE(seen.cost);
  REQUIRE(seen.reward);
  CHECK(*seen.reward == fx.truth.reward[3]);
  {
    const PolicyContext ctx(fx.topology, s);
    // Back over the traversed edge to a visited node: minus the observed cost.
    CHECK(expected_net_gain(ctx, 0) == doctest::Approx(-fx.truth.cost[fx.topology.edge_index(0, 3)]));
    CHECK(net_gain_variance(ctx, 0) < 1e-6);
    CHECK(realized_net_gain(fx, s, 0) == doctest::Approx(-fx.truth.cost[fx.topology.edge_index(0, 3)]));
  }
  advance(fx, s, 0);
  const auto again = advance(fx, s, 3);
  CHECK_FALSE(again.cost);
  CHECK_FALSE(again.reward);
  // A stay changes nothing but the step.
  const auto before = s.belief.cost_obs.size();
  const auto stayed = transition(fx, s, 3);
  CHECK(stayed.belief.cost_obs.size() == before);
  CHECK(stayed.step == s.step + 1);
  CHECK_THROWS_AS(realized_net_gain(fx, s, 1), GraphError);
}

TEST_CASE("node observed but edge untraversed leaves only the cost variance") {
  // Node 2 and node 0 share features, so observing the start reward makes
  // node 2's reward known while edge (0, 2) is still unobserved.
  const auto fx = build_fixture_illustrative();
  const auto s = initial_state(fx);
  const PolicyContext ctx(fx.topology, s);
  CHECK(ctx.reward_observed(2));
  const auto e = fx.topology.edge_index(0, 2);
  CHECK_FALSE(ctx.cost_observed(e));
  const auto [m, v] = ctx.cost_posterior().marginal(fx.topology.edge(e).features);
  CHECK(net_gain_variance(ctx, 2) == doctest::Approx(v));
  CHECK(expected_net_gain(ctx, 2) == doctest::Approx(ctx.reward_mean(2) - m));
}

TEST_CASE("scripted replays of the reference walks") {
  const auto fx = build_fixture_illustrative();
  const std::pair<const char*, double> cases[] = {{"1-5-3-2", 175.16},
                                                  {"1-3-5-2", 177.03},
                                                  {"1-4-1-3-5-2", 214.70},
                                                  {"1-4-3-5-2", 214.75},
                                                  {"1-4-1-2-5-3", 219.60}};
  for (const auto& [walk, total] : cases) {
    CAPTURE(walk);
    const ScriptedPolicy policy(fixture_walk(walk));
    const auto log = run_episode(fx, policy, 0);
    CHECK(std::abs(log.total - total) < 0.01);
    CHECK(log.walk() == fixture_walk(walk));
    CHECK(std::abs(total_contribution(fx, log) - log.total) < 1e-9);
    CHECK(std::abs(walk_value(fx, fixture_walk(walk)) - log.total) < 1e-9);
  }
}

TEST_CASE("episode termination and faults") {
  const auto fx = build_fixture_illustrative();
  const auto stay = run_episode(fx, FixedPolicy(0), 1);
  CHECK(stay.steps() == 1);
  CHECK(stay.total == 0.0);
  CHECK(stay.walk() == std::vector<NodeId>{0});

  const auto bad = run_episode(build_fixture_illustrative(), ScriptedPolicy({0, 3, 4}), 1);
  REQUIRE(bad.fault);
  CHECK(bad.walk() == std::vector<NodeId>{0, 3});

  EpisodeOptions capped;
  capped.horizon = 3;
  const auto bounce = run_episode(fx, ScriptedPolicy({0, 3, 0, 3, 0, 3}), 1, capped);
  CHECK(bounce.steps() == 3);
}

TEST_CASE("policies cannot see unobserved truths") {
  BeliefConfig cfg;
  cfg.cost_prior_mean = 5.0;
  cfg.reward_prior_mean = 50.0;
  EpisodeOptions options;
  options.belief = cfg;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto a = erdos_renyi(9, 0.4, seed);
    // Perturb every reward and cost the union of all policies' episodes never
    // observes.
    std::vector<EpisodeLog> logs;
    for (const char* spec : {"M", "UCB:lambda=1", "HP:alpha=1,H=3", "SC:beta=3"}) {
      logs.push_back(run_episode(a, *make_policy(parse_policy(spec)), seed, options));
    }
    auto b = a;
    std::vector<bool> node_seen(a.topology.node_count(), false);
    std::vector<bool> edge_seen(a.topology.edge_count(), false);
    node_seen[a.topology.start()] = true;
    for (const auto& log : logs) {
      for (const auto& r : log.records) {
        node_seen[r.to] = true;
        edge_seen[a.topology.edge_index(r.from, r.to)] = true;
      }
    }
    for (NodeId i = 0; i < a.topology.node_count(); ++i) {
      if (!node_seen[i]) b.truth.reward[i] += 1000.0;
    }
    for (std::size_t e = 0; e < a.topology.edge_count(); ++e) {
      if (!edge_seen[e] && !a.topology.edge(e).key.is_self_loop()) b.truth.cost[e] += 1000.0;
    }
    for (const char* spec : {"M", "UCB:lambda=1", "HP:alpha=1,H=3", "SC:beta=3"}) {
      CAPTURE(spec);
      const auto policy = make_policy(parse_policy(spec));
      CHECK(run_episode(b, *policy, seed, options).walk() == run_episode(a, *policy, seed, options).walk());
    }
  }
}

TEST_CASE("csv output") {
  EpisodeLog log;
  log.instance_id = "a,b";
  log.policy = "HP:alpha=1,H=3";
  log.seed = 4;
  log.total = 1.5;
  CHECK(episode_csv_header() == "instance,policy,seed,steps,total");
  CHECK(episode_csv_row(log).rfind("\"a,b\",\"HP:alpha=1,H=3\",4,0,", 0) == 0);
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("say \"x\"") == "\"say \"\"x\"\"\"");
  const auto doc = episode_to_json(log);
  CHECK(doc["policy"] == "HP:alpha=1,H=3");
}
