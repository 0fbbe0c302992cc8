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

#include "bgt/graph.hpp"

namespace bgt {

struct ErdosRenyiOptions {
  // Whole-graph resamples allowed before giving up on (n, p).
  std::uint64_t max_attempts = 100000;
  int horizon = 500;
  double extent = 10.0;  // coordinates uniform on [0, extent]^2
  NodeId start = 0;
  TruthModel truth = default_truth_model();
};

// G(n, p) conditioned on connectivity by rejection of whole graphs. Self-loops
// are added afterwards; covariates and truths follow the defaults.
// Deterministic in `seed`.
GraphInstance erdos_renyi(std::size_t n, double p, std::uint64_t seed,
                          const ErdosRenyiOptions& options = {});

}  // namespace bgt
