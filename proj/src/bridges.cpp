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

#include "bgt/bridges.hpp"

#include <algorithm>

namespace bgt {

std::vector<bool> find_bridges(const Topology& topology) {
  const std::size_t n = topology.node_count();
  std::vector<bool> bridge(topology.edge_count(), false);
  std::vector<int> order(n, -1);
  std::vector<int> low(n, 0);
  int counter = 0;

  struct Frame {
    NodeId node;
    std::size_t parent_edge;
    std::size_t next;
  };
  constexpr std::size_t kNoEdge = static_cast<std::size_t>(-1);
  for (NodeId root = 0; root < n; ++root) {
    if (order[root] >= 0) continue;
    std::vector<Frame> stack{{root, kNoEdge, 0}};
    order[root] = low[root] = counter++;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& nbs = topology.neighbors(top.node);
      if (top.next < nbs.size()) {
        const Neighbor nb = nbs[top.next++];
        if (nb.node == top.node || nb.edge == top.parent_edge) continue;
        if (order[nb.node] < 0) {
          order[nb.node] = low[nb.node] = counter++;
          stack.push_back({nb.node, nb.edge, 0});
        } else {
          low[top.node] = std::min(low[top.node], order[nb.node]);
        }
        continue;
      }
      const Frame done = top;
      stack.pop_back();
      if (stack.empty()) break;
      const NodeId parent = stack.back().node;
      low[parent] = std::min(low[parent], low[done.node]);
      if (low[done.node] > order[parent]) bridge[done.parent_edge] = true;
    }
  }
  return bridge;
}

}  // namespace bgt
