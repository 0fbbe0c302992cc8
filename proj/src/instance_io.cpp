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

#include "bgt/instance_io.hpp"

#include <fstream>
#include <sstream>

#include "bgt/errors.hpp"
#include "bgt/rng.hpp"

namespace bgt {

using nlohmann::ordered_json;

namespace {

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw SchemaError(where + ": missing field '" + key + "'");
  }
  return obj.at(key);
}

double as_number(const ordered_json& value, const std::string& field) {
  if (!value.is_number()) throw SchemaError(field + ": expected a number");
  return value.get<double>();
}

NodeId as_id(const ordered_json& value, const std::string& field) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw SchemaError(field + ": expected a non-negative integer");
  }
  return static_cast<NodeId>(value.get<long long>());
}

FeatureVector as_features(const ordered_json& value, const std::string& field) {
  if (!value.is_array()) throw SchemaError(field + ": expected an array of numbers");
  FeatureVector out;
  for (std::size_t k = 0; k < value.size(); ++k) {
    out.push_back(as_number(value[k], field + "[" + std::to_string(k) + "]"));
  }
  return out;
}

}  // namespace

ordered_json instance_to_json(const GraphInstance& instance) {
  const auto& topology = instance.topology;
  ordered_json nodes = ordered_json::array();
  for (const auto& node : topology.nodes()) {
    ordered_json entry;
    entry["id"] = node.id;
    entry["coords"] = {node.coords.x, node.coords.y};
    entry["features"] = node.features;
    entry["reward"] = instance.truth.reward[node.id];
    nodes.push_back(std::move(entry));
  }
  ordered_json edges = ordered_json::array();
  for (std::size_t e = 0; e < topology.edge_count(); ++e) {
    const auto& edge = topology.edge(e);
    ordered_json entry;
    entry["a"] = edge.key.a;
    entry["b"] = edge.key.b;
    entry["features"] = edge.features;
    entry["cost"] = instance.truth.cost[e];
    edges.push_back(std::move(entry));
  }
  ordered_json doc;
  doc["nodes"] = std::move(nodes);
  doc["edges"] = std::move(edges);
  doc["start"] = topology.start();
  doc["horizon"] = topology.horizon();
  return doc;
}

GraphInstance instance_from_json(const ordered_json& doc, const TruthModel& defaults) {
  if (!doc.is_object()) throw SchemaError("instance: expected a JSON object");
  const auto& node_list = require(doc, "nodes", "instance");
  const auto& edge_list = require(doc, "edges", "instance");
  if (!node_list.is_array()) throw SchemaError("nodes: expected an array");
  if (!edge_list.is_array()) throw SchemaError("edges: expected an array");

  std::vector<Node> nodes;
  std::vector<std::optional<double>> rewards;
  for (std::size_t k = 0; k < node_list.size(); ++k) {
    const std::string where = "nodes[" + std::to_string(k) + "]";
    const auto& entry = node_list[k];
    Node node;
    node.id = as_id(require(entry, "id", where), where + ".id");
    const auto& coords = require(entry, "coords", where);
    if (!coords.is_array() || coords.size() != 2) {
      throw SchemaError(where + ".coords: expected [x, y]");
    }
    node.coords = {as_number(coords[0], where + ".coords[0]"),
                   as_number(coords[1], where + ".coords[1]")};
    if (entry.contains("features")) node.features = as_features(entry["features"], where + ".features");
    rewards.push_back(entry.contains("reward")
                          ? std::optional(as_number(entry["reward"], where + ".reward"))
                          : std::nullopt);
    nodes.push_back(std::move(node));
  }

  std::vector<Edge> edges;
  std::map<EdgeKey, double> costs;
  for (std::size_t k = 0; k < edge_list.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    const auto& entry = edge_list[k];
    Edge edge;
    edge.key = EdgeKey(as_id(require(entry, "a", where), where + ".a"),
                       as_id(require(entry, "b", where), where + ".b"));
    if (entry.contains("features")) edge.features = as_features(entry["features"], where + ".features");
    if (entry.contains("cost")) costs[edge.key] = as_number(entry["cost"], where + ".cost");
    edges.push_back(std::move(edge));
  }

  const NodeId start = as_id(require(doc, "start", "instance"), "start");
  const auto& horizon_value = require(doc, "horizon", "instance");
  if (!horizon_value.is_number_integer()) throw SchemaError("horizon: expected an integer");

  Topology topology = [&] {
    try {
      return Topology(std::move(nodes), std::move(edges), start, horizon_value.get<int>());
    } catch (const GraphError& err) {
      throw SchemaError(std::string("instance: ") + err.what());
    }
  }();

  GroundTruth truth = apply_truth(topology, defaults);
  for (NodeId i = 0; i < topology.node_count(); ++i) {
    if (rewards[i]) truth.reward[i] = *rewards[i];
  }
  for (std::size_t e = 0; e < topology.edge_count(); ++e) {
    const auto it = costs.find(topology.edge(e).key);
    if (it != costs.end()) truth.cost[e] = it->second;
  }
  for (std::size_t e = 0; e < topology.edge_count(); ++e) {
    if (topology.edge(e).key.is_self_loop() && truth.cost[e] != 0.0) {
      throw SchemaError("edges: self-loop cost must be 0");
    }
    if (truth.cost[e] < 0.0) throw SchemaError("edges: cost must be non-negative");
  }
  return GraphInstance{std::move(topology), std::move(truth), {}};
}

std::string serialize(const GraphInstance& instance) { return instance_to_json(instance).dump(2); }

GraphInstance parse_instance(std::string_view text, const TruthModel& defaults) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw SchemaError(std::string("instance: malformed JSON: ") + err.what());
  }
  return instance_from_json(doc, defaults);
}

GraphInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open instance file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto instance = parse_instance(buffer.str());
  instance.name = path;
  return instance;
}

void save_instance(const GraphInstance& instance, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write instance file " + path);
  out << serialize(instance) << '\n';
}

std::uint64_t instance_hash(const GraphInstance& instance) { return fnv1a(serialize(instance)); }

}  // namespace bgt
