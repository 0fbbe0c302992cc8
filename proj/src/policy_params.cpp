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

#include "bgt/policy_params.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "bgt/errors.hpp"
#include "bgt/policies.hpp"

namespace bgt {

namespace {

std::string format_number(double value) {
  std::ostringstream out;
  out.precision(12);
  out << value;
  return out.str();
}

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used == text.size()) return value;
  } catch (const std::exception&) {
  }
  throw SchemaError("policy parameter '" + key + "': expected a number, got '" + text + "'");
}

int parse_int(const std::string& text, const std::string& key) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw SchemaError("policy parameter '" + key + "': expected an integer, got '" + text + "'");
  }
  return value;
}

std::map<std::string, std::string> parse_pairs(std::string_view body, std::string_view spec) {
  std::map<std::string, std::string> pairs;
  std::stringstream in{std::string(body)};
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw SchemaError("policy spec '" + std::string(spec) + "': expected key=value, got '" + item + "'");
    }
    pairs[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return pairs;
}

void reject_unknown(const std::map<std::string, std::string>& pairs,
                    std::initializer_list<const char*> known, std::string_view spec) {
  for (const auto& [key, value] : pairs) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw SchemaError("policy spec '" + std::string(spec) + "': unknown parameter '" + key + "'");
  }
}

}  // namespace

std::string PolicyParams::family() const {
  switch (kind) {
    case PolicyKind::kMyopic: return "M";
    case PolicyKind::kUcb: return "UCB";
    case PolicyKind::kHPath: return "HP";
    case PolicyKind::kSpeculating: return "SC";
  }
  return "?";
}

std::string PolicyParams::params(char separator) const {
  const std::string sep(1, separator);
  switch (kind) {
    case PolicyKind::kMyopic: return "";
    case PolicyKind::kUcb: return "lambda=" + format_number(lambda);
    case PolicyKind::kHPath:
      return "alpha=" + format_number(alpha) + sep + "H=" + std::to_string(horizon) + sep +
             "solver=" + (solver == HpSolver::kExhaustive ? "exhaustive" : "search");
    case PolicyKind::kSpeculating:
      return "beta=" + std::to_string(beta) + sep + "V=" +
             (walk_cap ? std::to_string(*walk_cap) : std::string("2E"));
  }
  return "";
}

std::string PolicyParams::to_string() const {
  const auto p = params();
  return p.empty() ? family() : family() + ":" + p;
}

PolicyParams parse_policy(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string family(spec.substr(0, colon));
  const auto body = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const auto pairs = parse_pairs(body, spec);
  PolicyParams params;
  if (family == "M") {
    reject_unknown(pairs, {}, spec);
    params.kind = PolicyKind::kMyopic;
  } else if (family == "UCB") {
    reject_unknown(pairs, {"lambda"}, spec);
    params.kind = PolicyKind::kUcb;
    if (pairs.contains("lambda")) params.lambda = parse_double(pairs.at("lambda"), "lambda");
    if (params.lambda < 0) throw SchemaError("UCB lambda must be >= 0");
  } else if (family == "HP") {
    reject_unknown(pairs, {"alpha", "H", "solver"}, spec);
    params.kind = PolicyKind::kHPath;
    if (pairs.contains("alpha")) params.alpha = parse_double(pairs.at("alpha"), "alpha");
    if (pairs.contains("H")) params.horizon = parse_int(pairs.at("H"), "H");
    if (pairs.contains("solver")) {
      const auto& s = pairs.at("solver");
      if (s == "exhaustive") {
        params.solver = HpSolver::kExhaustive;
      } else if (s == "search") {
        params.solver = HpSolver::kNeighborhoodSearch;
      } else {
        throw SchemaError("HP solver must be 'exhaustive' or 'search', got '" + s + "'");
      }
    }
    if (params.alpha < 0) throw SchemaError("HP alpha must be >= 0");
    if (params.horizon < 1) throw SchemaError("HP H must be >= 1");
  } else if (family == "SC") {
    reject_unknown(pairs, {"beta", "V"}, spec);
    params.kind = PolicyKind::kSpeculating;
    if (pairs.contains("beta")) params.beta = parse_int(pairs.at("beta"), "beta");
    if (pairs.contains("V") && pairs.at("V") != "2E") {
      params.walk_cap = parse_int(pairs.at("V"), "V");
      if (*params.walk_cap < 1) throw SchemaError("SC V must be >= 1");
    }
    if (params.beta < 1) throw SchemaError("SC beta must be >= 1");
  } else {
    throw SchemaError("unknown policy family '" + family + "' in '" + std::string(spec) + "'");
  }
  return params;
}

std::unique_ptr<Policy> make_policy(const PolicyParams& params) {
  switch (params.kind) {
    case PolicyKind::kMyopic: return std::make_unique<MyopicPolicy>();
    case PolicyKind::kUcb: return std::make_unique<UcbPolicy>(params.lambda);
    case PolicyKind::kHPath:
      return std::make_unique<HPathPolicy>(params.alpha, params.horizon, params.solver);
    case PolicyKind::kSpeculating:
      return std::make_unique<SpeculatingClairvoyantPolicy>(params.beta, params.walk_cap);
  }
  throw SchemaError("unknown policy kind");
}

std::string UcbPolicy::descriptor() const {
  PolicyParams p;
  p.kind = PolicyKind::kUcb;
  p.lambda = lambda_;
  return p.to_string();
}

std::string HPathPolicy::descriptor() const {
  PolicyParams p;
  p.kind = PolicyKind::kHPath;
  p.alpha = alpha_;
  p.horizon = horizon_;
  p.solver = solver_;
  return p.to_string();
}

std::string SpeculatingClairvoyantPolicy::descriptor() const {
  PolicyParams p;
  p.kind = PolicyKind::kSpeculating;
  p.beta = beta_;
  p.walk_cap = walk_cap_;
  return p.to_string();
}

}  // namespace bgt
