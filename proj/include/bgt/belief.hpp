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

#include <optional>

#include "bgt/gp.hpp"
#include "bgt/graph.hpp"
#include "json.hpp"

namespace bgt {

struct BeliefConfig {
  Kernel kernel;
  // Condition the reward process on the start node's (features, reward) pair
  // before the first decision.
  bool observe_start_reward = true;
  // Whether self-loop costs (structurally 0) enter the cost grand mean.
  bool self_loops_in_cost_mean = false;
  // Explicit prior means; the grand means of the instance truths otherwise.
  std::optional<double> cost_prior_mean;
  std::optional<double> reward_prior_mean;
};

// Two independent GPs: edge cost over edge features, node reward over node
// features, each with its own observation set.
struct BeliefState {
  GpPrior cost_prior;
  GpPrior reward_prior;
  ObservationSet cost_obs;
  ObservationSet reward_obs;

  GpPosterior cost_posterior() const { return GpPosterior(cost_prior, cost_obs); }
  GpPosterior reward_posterior() const { return GpPosterior(reward_prior, reward_obs); }
};

double reward_grand_mean(const GraphInstance& instance);
double cost_grand_mean(const GraphInstance& instance, bool include_self_loops = false);

// Priors from the config (grand means by default), empty observation sets.
BeliefState prior_belief(const GraphInstance& instance, const BeliefConfig& config = {});

// Debug snapshot: hyperparameters, inputs and values.
nlohmann::ordered_json belief_to_json(const BeliefState& belief);

}  // namespace bgt
