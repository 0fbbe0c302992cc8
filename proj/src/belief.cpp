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

#include "bgt/belief.hpp"

#include <numeric>

namespace bgt {

double reward_grand_mean(const GraphInstance& instance) {
  const auto& r = instance.truth.reward;
  return std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
}

double cost_grand_mean(const GraphInstance& instance, bool include_self_loops) {
  double sum = 0.0;
  std::size_t count = 0;
  const auto& topology = instance.topology;
  for (std::size_t e = 0; e < topology.edge_count(); ++e) {
    if (!include_self_loops && topology.edge(e).key.is_self_loop()) continue;
    sum += instance.truth.cost[e];
    ++count;
  }
  return count ? sum / static_cast<double>(count) : 0.0;
}

BeliefState prior_belief(const GraphInstance& instance, const BeliefConfig& config) {
  BeliefState belief;
  belief.cost_prior.kernel = config.kernel;
  belief.reward_prior.kernel = config.kernel;
  belief.cost_prior.mean =
      config.cost_prior_mean.value_or(cost_grand_mean(instance, config.self_loops_in_cost_mean));
  belief.reward_prior.mean = config.reward_prior_mean.value_or(reward_grand_mean(instance));
  return belief;
}

namespace {

nlohmann::ordered_json process_to_json(const GpPrior& prior, const ObservationSet& obs) {
  nlohmann::ordered_json out;
  out["mean"] = prior.mean;
  out["bandwidth"] = prior.kernel.bandwidth;
  out["signal_variance"] = prior.kernel.signal_variance;
  out["convention"] =
      prior.kernel.convention == KernelConvention::kHalfSquared ? "half-squared" : "squared";
  out["inputs"] = obs.inputs();
  out["values"] = obs.values();
  return out;
}

}  // namespace

nlohmann::ordered_json belief_to_json(const BeliefState& belief) {
  nlohmann::ordered_json out;
  out["cost"] = process_to_json(belief.cost_prior, belief.cost_obs);
  out["reward"] = process_to_json(belief.reward_prior, belief.reward_obs);
  return out;
}

}  // namespace bgt
