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
#include <string>
#include <string_view>

#include "bgt/graph.hpp"
#include "json.hpp"

namespace bgt {

// Instance document:
//   {"nodes": [{"id", "coords": [x, y], "features": [...], "reward"}],
//    "edges": [{"a", "b", "features": [...], "cost"}],   // self-loops included
//    "start": id, "horizon": T}
// Keys are emitted in this order. On input, features, reward and cost may be
// omitted and are then derived by the defaults.
nlohmann::ordered_json instance_to_json(const GraphInstance& instance);
GraphInstance instance_from_json(const nlohmann::ordered_json& doc,
                                 const TruthModel& defaults = default_truth_model());

std::string serialize(const GraphInstance& instance);
GraphInstance parse_instance(std::string_view text,
                             const TruthModel& defaults = default_truth_model());

GraphInstance load_instance(const std::string& path);
void save_instance(const GraphInstance& instance, const std::string& path);

// FNV-1a of the canonical serialization.
std::uint64_t instance_hash(const GraphInstance& instance);

}  // namespace bgt
