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

// Exercises the shared library through its C header only.

#include <doctest.h>

#include <nestedgrover/nestedgrover.h>

#include <cmath>
#include <string>
#include <vector>

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  ng_string_free(s);
  return out;
}

}  // namespace

TEST_SUITE("capi") {

TEST_CASE("version and error reporting") {
  CHECK(std::string(ng_version()) == "0.1.0");
  ng_state* s = nullptr;
  CHECK(ng_state_create_uniform(40, &s) == NG_ERR_CONFIG);
  CHECK(s == nullptr);
  CHECK(std::string(ng_last_error()).find("40") != std::string::npos);
  CHECK(ng_state_create_uniform(2, nullptr) == NG_ERR_ARGUMENT);
  unsigned n = 0;
  CHECK(ng_state_num_qubits(nullptr, &n) == NG_ERR_ARGUMENT);
}

TEST_CASE("statevector round trip") {
  ng_state* s = nullptr;
  REQUIRE(ng_state_create_uniform(3, &s) == NG_OK);
  const unsigned qubits[] = {0, 1, 2};
  CHECK(ng_state_phase_flip_pattern(s, qubits, 3, 0b101) == NG_OK);
  CHECK(ng_state_diffusion(s, qubits, 3) == NG_OK);
  double p = 0;
  CHECK(ng_state_probability(s, 0b101, &p) == NG_OK);
  CHECK(p == doctest::Approx(std::pow(std::sin(3 * std::asin(std::sqrt(1.0 / 8))), 2)));

  std::vector<double> amps(16);
  CHECK(ng_state_amplitudes(s, amps.data(), 4) == NG_ERR_ARGUMENT);
  CHECK(ng_state_amplitudes(s, amps.data(), amps.size()) == NG_OK);
  CHECK(amps[2 * 0b101] * amps[2 * 0b101] == doctest::Approx(p));

  std::vector<std::uint64_t> idx(8), cnt(8);
  size_t len = 0;
  CHECK(ng_state_sample(s, 1000, 3, idx.data(), cnt.data(), idx.size(), &len) == NG_OK);
  std::uint64_t total = 0;
  for (size_t i = 0; i < len; ++i) total += cnt[i];
  CHECK(total == 1000);

  const unsigned bad[] = {0, 7};
  CHECK(ng_state_diffusion(s, bad, 2) == NG_ERR_CONFIG);
  ng_state_free(s);
}

TEST_CASE("literal oracles and purity") {
  ng_state* s = nullptr;
  REQUIRE(ng_state_create_uniform(4, &s) == NG_OK);
  const unsigned lower[] = {0, 1};
  const int lits[] = {2, -1};
  std::uint64_t calls = 0;
  std::uint64_t r = 0;
  REQUIRE(ng_iteration_count(4, 1, &r) == NG_OK);
  CHECK(r == 1);
  CHECK(ng_run_grover_literals(s, lower, 2, lits, 2, r, &calls) == NG_OK);
  CHECK(calls == 1);
  double purity = 0;
  CHECK(ng_state_purity(s, lower, 2, &purity) == NG_OK);
  CHECK(purity == doctest::Approx(1.0));
  double p = 0;
  CHECK(ng_state_probability(s, 0b0010, &p) == NG_OK);
  CHECK(p == doctest::Approx(0.25));
  const int out_of_range[] = {3};
  CHECK(ng_state_phase_flip_literals(s, lower, 2, out_of_range, 1) != NG_OK);
  ng_state_free(s);
}

TEST_CASE("costs") {
  double total = 0;
  int valid = 0;
  CHECK(ng_cost_eval("iterative", 4, 1, -1, &total, &valid) == NG_OK);
  CHECK(total == doctest::Approx(5.0));
  CHECK(ng_cost_eval("nonsense", 4, 1, -1, &total, &valid) == NG_ERR_CONFIG);
  double p = 0;
  CHECK(ng_success_probability(8, 1, 2, &p) == NG_OK);
  CHECK(p == doctest::Approx(0.9453125));
  char* table = nullptr;
  CHECK(ng_cost_table("4..6", "1,2", "all", NG_FORMAT_CSV, &table) == NG_OK);
  CHECK(take(table).rfind("# nested-grover-cost/1\nm,v,strategy", 0) == 0);
  CHECK(ng_cost_table("6..4", "1", "all", NG_FORMAT_CSV, &table) == NG_ERR_CONFIG);
}

TEST_CASE("configs, runs and verification") {
  ng_config* cfg = nullptr;
  CHECK(ng_config_load_file(NG_FIXTURE_DIR "/bad_field.yaml", &cfg) == NG_ERR_CONFIG);
  CHECK(std::string(ng_last_error()).find("'g'") != std::string::npos);

  REQUIRE(ng_config_load_file(NG_CONFIG_DIR "/fig_a_basic_2.yaml", &cfg) == NG_OK);
  CHECK(ng_config_set_shots(cfg, 0) == NG_ERR_CONFIG);
  CHECK(ng_config_set_shots(cfg, 200) == NG_OK);
  ng_format fmt = NG_FORMAT_TEXT;
  CHECK(ng_config_format(cfg, &fmt) == NG_OK);
  CHECK(fmt == NG_FORMAT_JSON);

  ng_artifact* a = nullptr;
  ng_artifact* b = nullptr;
  REQUIRE(ng_run(cfg, &a) == NG_OK);
  REQUIRE(ng_run(cfg, &b) == NG_OK);
  int code = -1;
  CHECK(ng_artifact_exit_code(a, &code) == NG_OK);
  CHECK(code == 0);
  char* ja = nullptr;
  char* jb = nullptr;
  CHECK(ng_artifact_render(a, NG_FORMAT_JSON, 0, &ja) == NG_OK);
  CHECK(ng_artifact_render(b, NG_FORMAT_JSON, 0, &jb) == NG_OK);
  const auto sa = take(ja);
  CHECK(sa == take(jb));
  CHECK(sa.find("\"shots\": 200") != std::string::npos);
  ng_artifact_free(a);
  ng_artifact_free(b);

  char* report = nullptr;
  int passed = 0;
  CHECK(ng_verify(cfg, NG_FORMAT_TEXT, &report, &passed) == NG_OK);
  CHECK(passed == 1);
  take(report);
  ng_config_free(cfg);

  REQUIRE(ng_config_load_string("strategy: iterative\nm: 5\ng: 3\n"
                                "global_oracle: [5, -4, 3, -2, 1]\ncandidates: [\"000\"]\n",
                                &cfg) == NG_OK);
  REQUIRE(ng_run(cfg, &a) == NG_OK);
  CHECK(ng_artifact_exit_code(a, &code) == NG_OK);
  CHECK(code == 2);
  ng_artifact_free(a);
  ng_config_free(cfg);
}

}  // TEST_SUITE
