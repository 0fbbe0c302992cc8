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

#include "bgt/policies.hpp"

namespace bgt {

namespace {

template <typename Score>
NodeId argmax_neighbor(const PolicyContext& ctx, Score score) {
  NodeId best = ctx.current();
  double best_score = 0.0;
  bool first = true;
  // Neighbors are sorted by id, so a strict comparison keeps the lowest id.
  for (const auto& nb : ctx.topology().neighbors(ctx.current())) {
    const double s = score(nb.node);
    if (first || s > best_score) {
      best = nb.node;
      best_score = s;
      first = false;
    }
  }
  return best;
}

}  // namespace

NodeId myopic_decide(const PolicyContext& ctx) {
  return argmax_neighbor(ctx, [&](NodeId j) { return expected_net_gain(ctx, j); });
}

NodeId ucb_decide(const PolicyContext& ctx, double lambda) {
  return argmax_neighbor(ctx, [&](NodeId j) {
    return expected_net_gain(ctx, j) + lambda * net_gain_variance(ctx, j);
  });
}

}  // namespace bgt
