// Copyright 2026 The nestedgrover Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <string>

#include "core/errors.hpp"
#include "core/experiment.hpp"

using namespace ngs;
namespace fs = std::filesystem;

namespace {

fs::path config_path(const char* stem) { return fs::path(NG_CONFIG_DIR) / (std::string(stem) + ".yaml"); }
fs::path fixture_path(const char* stem) { return fs::path(NG_FIXTURE_DIR) / (std::string(stem) + ".yaml"); }

std::string error_of(std::string_view text) {
  try {
    parse_config(text, "t.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

constexpr const char* kMinimal = R"(strategy: entangled
m: 5
g: 3
global_oracle: [5, -4, 3, -2, 1]
candidates: ["011", "101"]
)";

}  // namespace

TEST_SUITE("experiment") {

TEST_CASE("config defaults and literal candidates") {
  const auto c = parse_config(kMinimal);
  CHECK(c.shots == 1024);
  CHECK(c.seed == 0);
  CHECK(c.format == OutputFormat::kJson);
  CHECK(c.candidates == std::vector<std::uint64_t>{0b011, 0b101});
  const auto lit = parse_config(std::string(kMinimal).replace(
      std::string(kMinimal).find("candidates"), std::string::npos, "candidates: [[-3, 2, 1], [3, -2, 1]]\n"));
  CHECK(lit.candidates == c.candidates);
}

TEST_CASE("config errors carry the line and the field") {
  std::string err;
  try {
    load_config(fixture_path("bad_field"));
  } catch (const ConfigError& e) {
    err = e.what();
  }
  CHECK(err.find("bad_field.yaml:4") != std::string::npos);
  CHECK(err.find("'g'") != std::string::npos);

  CHECK(error_of(std::string(kMinimal) + "colour: red\n").find("'colour'") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "shots: 0\n").find("'shots'") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "strategy: bogus\n") != "");
  CHECK(error_of("m: 5\n").find("strategy") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "upper_oracle: [2]\n").find("'upper_oracle'") != std::string::npos);
  CHECK(error_of("strategy: entangled\nm: 5\ng: 3\nglobal_oracle: [5, 1]\ncandidates: [\"011\"]\n") != "");
  CHECK(error_of("strategy: entangled\nm: 25\ng: 3\nglobal_oracle: [5]\ncandidates: [\"011\"]\n") != "");
  CHECK(error_of("strategy: entangled\nm: 5\ng: 3\nglobal_oracle: [5, -4, 3, -2, 1]\ncandidates: [\"01\"]\n") != "");
  CHECK_THROWS_AS(load_config("/nonexistent/x.yaml"), ConfigError);
}

TEST_CASE("run renders are deterministic and well formed") {
  for (const char* stem : {"fig_a_basic_0", "fig_a_basic_2", "fig_a_basic_4", "fig_d_el_v_3_6"}) {
    const auto cfg = load_config(config_path(stem));
    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    CHECK(render_run(a, OutputFormat::kJson) == render_run(b, OutputFormat::kJson));
    CHECK(render_run(a, OutputFormat::kCsv) == render_run(b, OutputFormat::kCsv));

    const auto j = nlohmann::json::parse(render_run(a, OutputFormat::kJson));
    CHECK(j["schema"] == std::string(kRunSchema));
    CHECK(j["endianness"] == "little");
    CHECK_FALSE(j.contains("wall_time_ms"));
    std::uint64_t count = 0;
    double prob = 0;
    for (const auto& e : j["histogram"]) {
      count += e["count"].get<std::uint64_t>();
      prob += e["probability"].get<double>();
    }
    CHECK(count == j["shots"].get<std::uint64_t>());
    CHECK(prob == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(render_run(a, OutputFormat::kCsv).rfind("# nested-grover-run/1\n", 0) == 0);
    CHECK(nlohmann::json::parse(render_run(a, OutputFormat::kJson, true)).contains("wall_time_ms"));
  }
}

TEST_CASE("run exit codes") {
  CHECK(run_experiment(load_config(config_path("fig_a_basic_4"))).exit_code() == 0);
  CHECK(run_experiment(load_config(config_path("fig_a_basic_2"))).exit_code() == 0);
  const auto exhausted = run_experiment(load_config(fixture_path("exhausted")));
  CHECK_FALSE(exhausted.result.verified);
  CHECK(exhausted.exit_code() == 2);
}

TEST_CASE("seed changes only the sampled counts") {
  auto cfg = load_config(config_path("fig_a_basic_2"));
  const auto a = run_experiment(cfg);
  cfg.seed += 1;
  const auto b = run_experiment(cfg);
  REQUIRE(a.histogram.size() == b.histogram.size());
  bool counts_differ = false;
  for (std::size_t i = 0; i < a.histogram.size(); ++i) {
    CHECK(a.histogram[i].probability == b.histogram[i].probability);
    counts_differ |= a.histogram[i].count != b.histogram[i].count;
  }
  CHECK(counts_differ);
}

TEST_CASE("verify agrees for every bundled config and catches corruption") {
  for (const auto& entry : fs::directory_iterator(NG_CONFIG_DIR)) {
    const auto report = verify_experiment(load_config(entry.path()));
    CAPTURE(entry.path().string());
    CHECK(report.passed);
    CHECK(report.max_deviation <= kVerifyTolerance);
  }
  const auto bad = verify_experiment(load_config(fixture_path("corrupt_dense")));
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_deviation > kVerifyTolerance);
  const auto j = nlohmann::json::parse(render_verify(bad, OutputFormat::kJson));
  CHECK(j["schema"] == std::string(kVerifySchema));
  CHECK(j["passed"] == false);
}

TEST_CASE("parse_range") {
  CHECK(parse_range("4..7") == std::vector<unsigned>{4, 5, 6, 7});
  CHECK(parse_range("1,2,4") == std::vector<unsigned>{1, 2, 4});
  CHECK(parse_range("9") == std::vector<unsigned>{9});
  CHECK_THROWS_AS(parse_range("7..4"), ConfigError);
  CHECK_THROWS_AS(parse_range("x"), ConfigError);
  CHECK_THROWS_AS(parse_range(""), ConfigError);
}

TEST_CASE("cost table rows") {
  const auto rows = cost_table({4, 16}, {1, 4}, {Strategy::kIterative, Strategy::kDisentangled});
  CHECK(rows.size() == 8);
  bool saw_iter = false, saw_dis = false;
  for (const auto& r : rows) {
    if (r.breakdown.strategy == Strategy::kIterative && r.breakdown.m == 4 && r.breakdown.v == 1) {
      saw_iter = true;
      CHECK(r.breakdown.total == doctest::Approx(5.0));
    }
    if (r.breakdown.strategy == Strategy::kDisentangled && r.breakdown.m == 16 && r.breakdown.v == 4) {
      saw_dis = true;
      REQUIRE(r.times_ratio.has_value());
      CHECK(*r.times_ratio == doctest::Approx((8.0 * 16 + 4) / (5.5 * 16)));
    }
    CHECK(r.baseline == doctest::Approx(std::sqrt(std::ldexp(1.0, int(r.breakdown.m)))));
  }
  CHECK(saw_iter);
  CHECK(saw_dis);
  const auto csv = render_cost_table(rows, OutputFormat::kCsv);
  CHECK(csv.rfind("# nested-grover-cost/1\nm,v,strategy,g,total,baseline,times_ratio,valid,violations\n", 0) == 0);
  const auto j = nlohmann::json::parse(render_cost_table(rows, OutputFormat::kJson));
  CHECK(j["schema"] == std::string(kCostSchema));
}

}  // TEST_SUITE
