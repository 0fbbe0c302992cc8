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

#include "bgt/generator.hpp"

#include <string>

#include "bgt/errors.hpp"
#include "bgt/rng.hpp"

namespace bgt {

GraphInstance erdos_renyi(std::size_t n, double p, std::uint64_t seed,
                          const ErdosRenyiOptions& options) {
  if (n < 2) throw GenerationError("erdos_renyi needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw GenerationError("erdos_renyi needs 0 < p <= 1");
  if (options.start >= n) throw GenerationError("start node out of range");

  Rng rng(seed);
  SimpleGraph graph{n, {}};
  std::uint64_t attempt = 0;
  for (;; ++attempt) {
    if (attempt == options.max_attempts) {
      throw GenerationError("no connected G(" + std::to_string(n) + ", " + std::to_string(p) +
                            ") sample after " + std::to_string(options.max_attempts) +
                            " attempts");
    }
    graph.edges.clear();
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) {
        if (rng.bernoulli(p)) graph.edges.emplace_back(i, j);
      }
    }
    if (is_connected(graph)) break;
  }

  std::vector<Point> coords(n);
  for (auto& point : coords) {
    point.x = rng.uniform(0.0, options.extent);
    point.y = rng.uniform(0.0, options.extent);
  }
  auto topology = make_topology(coords, graph.edges, options.start, options.horizon);
  return with_truth(std::move(topology), options.truth,
                    "er-" + std::to_string(n) + "-" + std::to_string(seed));
}

}  // namespace bgt
