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

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "bgt/traversal.hpp"

namespace bgt {

enum class PolicyKind { kMyopic, kUcb, kHPath, kSpeculating };

// Sub-solver for the H-path planning problem.
enum class HpSolver { kNeighborhoodSearch, kExhaustive };

// Only the fields of the active kind are read.
struct PolicyParams {
  PolicyKind kind = PolicyKind::kMyopic;
  double lambda = 1.0;  // UCB variance weight
  double alpha = 1.0;   // HP generalized-variance weight
  int horizon = 3;      // HP path length H
  HpSolver solver = HpSolver::kNeighborhoodSearch;
  int beta = 1;                 // SC restarts
  std::optional<int> walk_cap;  // SC walk length cap V; 2|E| when unset

  // "M", "UCB", "HP", "SC".
  std::string family() const;
  // Active parameters as "key=value" joined by `separator`; empty for M.
  std::string params(char separator = ',') const;
  // Round-trips through parse_policy.
  std::string to_string() const;
};

// Accepts "M", "UCB:lambda=1", "HP:alpha=1,H=3[,solver=exhaustive|search]",
// "SC:beta=100[,V=2E|V=<int>]". Throws SchemaError on anything else.
PolicyParams parse_policy(std::string_view spec);

std::unique_ptr<Policy> make_policy(const PolicyParams& params);

}  // namespace bgt
