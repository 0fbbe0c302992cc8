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

#include <cmath>
#include <cstdlib>
#include <regex>
#include <sstream>
#include <set>

#include "bgt/errors.hpp"
#include "bgt/experiment.hpp"
#include "bgt/policies.hpp"
#include "bgt/report.hpp"
#include "doctest.h"

using namespace bgt;

namespace {

ExperimentDesign small_design() {
  ExperimentDesign d;
  d.sizes = {20};
  d.densities = {0.2, 0.5, 0.8};
  d.replications = 2;
  d.master_seed = 17;
  d.policies = std::vector<PolicyParams>{parse_policy("M"), parse_policy("UCB:lambda=1")};
  return d;
}

ResultRow row(const char* policy, std::uint64_t seed, double total) {
  ResultRow r;
  r.n = 5;
  r.p = 0.5;
  r.instance_seed = seed;
  r.policy = policy;
  r.total = total;
  return r;
}

}  // namespace

TEST_CASE("t interval") {
  const auto flat = t_interval({10, 10, 10});
  CHECK(flat.mean == 10.0);
  CHECK(flat.half_width == 0.0);
  const auto spread = t_interval({8, 10, 12});
  CHECK(spread.mean == doctest::Approx(10.0));
  CHECK(spread.half_width == doctest::Approx(4.303 * 2.0 / std::sqrt(3.0)).epsilon(1e-3));
  CHECK(t_interval({4.0}).half_width == 0.0);
}

TEST_CASE("improvement and summary") {
  CHECK(improvement_pct(110, 100) == doctest::Approx(10.0));
  CHECK(improvement_pct(90, -100) == doctest::Approx(190.0));
  CHECK(improvement_pct(1, 0) == doctest::Approx(1e8));
  const std::vector<ResultRow> rows{row("M", 1, 100), row("SC", 1, 108), row("M", 2, 100),
                                    row("SC", 2, 110), row("M", 3, 100), row("SC", 3, 112)};
  const auto s = summarize(rows);
  REQUIRE(s.size() == 2);
  CHECK(s[0].policy == "M");
  CHECK(s[0].improvement.mean == 0.0);
  CHECK(s[1].improvement.mean == doctest::Approx(10.0));
  CHECK(s[1].improvement.half_width == doctest::Approx(4.97).epsilon(1e-2));
  CHECK(s[1].best_in_family);
  CHECK_THROWS_AS(summarize({row("SC", 9, 1.0)}), SchemaError);
  CHECK(summary_csv(s).rfind("n,p,policy,params,count,", 0) == 0);
}

TEST_CASE("sweep rows, pairing and determinism") {
  const auto d = small_design();
  const auto a = run_sweep(d, {1, false});
  REQUIRE(a.size() == 12);
  std::set<std::uint64_t> hashes;
  for (std::size_t k = 0; k < a.size(); k += 2) {
    CHECK(a[k].policy == "M");
    CHECK(a[k + 1].policy == "UCB");
    CHECK(a[k].instance_hash == a[k + 1].instance_hash);
    CHECK(a[k].improvement_pct == 0.0);
    CHECK(a[k + 1].improvement_pct == doctest::Approx(improvement_pct(a[k + 1].total, a[k].total)));
    CHECK(a[k].wall_ms == 0.0);
    hashes.insert(a[k].instance_hash);
  }
  CHECK(hashes.size() == 6);
  const auto b = run_sweep(d, {3, false});
  CHECK(sweep_csv(a) == sweep_csv(b));
  const auto csv = sweep_csv(a);
  CHECK(csv.rfind(sweep_csv_header() + "\n", 0) == 0);
  CHECK(csv.find("lambda=1") != std::string::npos);
}

TEST_CASE("zero-lambda baseline matches myopic row by row") {
  auto d = small_design();
  d.policies = std::vector<PolicyParams>{parse_policy("UCB:lambda=0")};
  for (const auto& r : run_sweep(d, {2, false})) CHECK(r.improvement_pct == 0.0);
}

TEST_CASE("factorial settings") {
  const ExperimentDesign d;
  const auto settings = d.policy_settings();
  // M + 3 UCB + 9 HP + 3 SC.
  CHECK(settings.size() == 16);
  CHECK(settings.front().kind == PolicyKind::kMyopic);
}

TEST_CASE("design json") {
  const auto d = design_from_json(nlohmann::ordered_json::parse(
      R"({"sizes":[20],"densities":[0.2],"replications":3,"master_seed":5,"policies":["SC:beta=1"]})"));
  CHECK(d.replications == 3);
  CHECK(d.policy_settings().size() == 2);
  CHECK(design_from_json(design_to_json(d)).policy_settings().size() == 2);
  CHECK_THROWS_AS(design_from_json(nlohmann::ordered_json::parse(R"({"sizes":[20],"bogus":1})")), SchemaError);
  CHECK_THROWS_AS(design_from_json(nlohmann::ordered_json::parse(R"({"replications":0})")), SchemaError);
  CHECK_THROWS_AS(design_from_json(nlohmann::ordered_json::parse(R"({"policies":["Q"]})")), SchemaError);
}

TEST_CASE("parallelism default honors the environment") {
  ::setenv("BGT_PARALLELISM", "3", 1);
  CHECK(default_parallelism() == 3);
  ::setenv("BGT_PARALLELISM", "zero", 1);
  CHECK(default_parallelism() >= 1);
  ::unsetenv("BGT_PARALLELISM");
}

TEST_CASE("dot output") {
  const auto fx = build_fixture_illustrative();
  const auto empty = run_episode(fx, ScriptedPolicy({0}), 0);
  const auto dot0 = emit_dot(empty, fx, 1);
  CHECK(dot0.find("color=red") == std::string::npos);
  const auto log = run_episode(fx, ScriptedPolicy(fixture_walk("1-5-3-2")), 0);
  const auto dot = emit_dot(log, fx, 1);
  std::size_t highlighted = 0;
  for (std::size_t at = dot.find("color=red"); at != std::string::npos; at = dot.find("color=red", at + 1)) {
    ++highlighted;
  }
  CHECK(highlighted == 3);
  CHECK(dot.find("pos=\"3.0000,3.0000!\"") != std::string::npos);
  // Minimal grammar check: header, balanced braces, every statement ends in ';'.
  CHECK(dot.rfind("digraph bgt {\n", 0) == 0);
  CHECK(dot.substr(dot.size() - 2) == "}\n");
  const std::regex statement(R"(^  (graph|node) \[.*\];$|^  n\d+ \[.*\];$|^  n\d+ -> n\d+ \[.*\];$)");
  std::istringstream lines(dot);
  std::string line;
  std::getline(lines, line);
  while (std::getline(lines, line)) {
    if (line == "}") break;
    CHECK(std::regex_match(line, statement));
  }
}

TEST_CASE("illustrative comparison report") {
  const auto report = reproduce_table3({3, {}});
  REQUIRE(report.rows.size() == 5);
  for (const auto& r : report.rows) CHECK(std::abs(r.reference_replay - r.target) < 0.01);
  CHECK(std::abs(report.rows.back().achieved - 219.60) < 0.01);
  CHECK(report.oracle.proven);
  for (const auto& r : report.rows) CHECK(r.achieved <= report.oracle.value + 1e-6);
  CHECK(first_divergence({0, 1, 2}, {0, 1, 3}) == 1);
  CHECK(first_divergence({0, 1}, {0, 1, 3}) == 1);
  CHECK_FALSE(first_divergence({0, 1}, {0, 1}).has_value());
  CHECK(report.text().find("Optimal") != std::string::npos);
  CHECK(report.to_json()["rows"].size() == 5);
}
