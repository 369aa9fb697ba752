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

#include "nestedgrover/nestedgrover.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "core/cost.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/grover.hpp"
#include "core/oracle.hpp"
#include "core/statevector.hpp"

struct ng_state {
  ngs::Statevector sv;
};

struct ng_config {
  ngs::ExperimentConfig config;
};

struct ng_artifact {
  ngs::RunArtifact artifact;
};

namespace {

thread_local std::string g_last_error;

// Caller-side misuse such as an undersized output buffer.
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename F>
ng_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return NG_OK;
  } catch (const ngs::ConfigError& e) {
    g_last_error = e.what();
    return NG_ERR_CONFIG;
  } catch (const ngs::ValidationError& e) {
    g_last_error = e.what();
    return NG_ERR_VALIDATION;
  } catch (const ngs::DomainError& e) {
    g_last_error = e.what();
    return NG_ERR_DOMAIN;
  } catch (const ngs::PreconditionError& e) {
    g_last_error = e.what();
    return NG_ERR_PRECONDITION;
  } catch (const ArgumentError& e) {
    g_last_error = e.what();
    return NG_ERR_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NG_ERR_INTERNAL;
  }
}

ng_status bad_argument(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return NG_ERR_ARGUMENT;
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ngs::QubitSet make_set(const unsigned* qubits, size_t n) {
  if (n > 0 && !qubits) throw ngs::ConfigError("qubit list is null");
  return ngs::QubitSet(std::vector<unsigned>(qubits, qubits + n));
}

ngs::OutputFormat to_format(ng_format f) {
  switch (f) {
    case NG_FORMAT_JSON: return ngs::OutputFormat::kJson;
    case NG_FORMAT_CSV: return ngs::OutputFormat::kCsv;
    case NG_FORMAT_TEXT: return ngs::OutputFormat::kText;
  }
  throw ngs::ConfigError("unknown output format");
}

std::vector<ngs::Strategy> parse_strategies(const std::string& list) {
  if (list == "all") return {std::begin(ngs::kAllStrategies), std::end(ngs::kAllStrategies)};
  std::vector<ngs::Strategy> out;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const auto comma = std::min(list.find(',', pos), list.size());
    const auto name = list.substr(pos, comma - pos);
    const auto s = ngs::parse_strategy(name);
    if (!s) throw ngs::ConfigError("unknown strategy '" + name + "'");
    out.push_back(*s);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

extern "C" {

const char* ng_last_error(void) { return g_last_error.c_str(); }
const char* ng_version(void) { return "0.1.0"; }
void ng_string_free(char* s) { std::free(s); }

ng_status ng_state_create_uniform(unsigned num_qubits, ng_state** out) {
  if (!out) return bad_argument("out");
  return guarded([&] { *out = new ng_state{ngs::Statevector::uniform(num_qubits)}; });
}

ng_status ng_state_create_basis(unsigned num_qubits, uint64_t index, ng_state** out) {
  if (!out) return bad_argument("out");
  return guarded([&] { *out = new ng_state{ngs::Statevector::basis(num_qubits, index)}; });
}

void ng_state_free(ng_state* state) { delete state; }

ng_status ng_state_num_qubits(const ng_state* state, unsigned* out) {
  if (!state || !out) return bad_argument("state/out");
  *out = state->sv.num_qubits();
  return NG_OK;
}

ng_status ng_state_amplitudes(const ng_state* state, double* out, size_t capacity) {
  if (!state || !out) return bad_argument("state/out");
  return guarded([&] {
    const auto amps = state->sv.amplitudes();
    if (capacity < 2 * amps.size()) throw ArgumentError("amplitude buffer too small");
    for (std::size_t i = 0; i < amps.size(); ++i) {
      out[2 * i] = amps[i].real();
      out[2 * i + 1] = amps[i].imag();
    }
  });
}

ng_status ng_state_phase_flip_pattern(ng_state* state, const unsigned* qubits, size_t num_qubits,
                                      uint64_t pattern) {
  if (!state) return bad_argument("state");
  return guarded([&] {
    ngs::apply_phase_flip(state->sv, [pattern](std::uint64_t x) { return x == pattern; },
                          make_set(qubits, num_qubits));
  });
}

ng_status ng_state_phase_flip_literals(ng_state* state, const unsigned* qubits, size_t num_qubits,
                                       const int* literals, size_t num_literals) {
  if (!state || (num_literals > 0 && !literals)) return bad_argument("state/literals");
  return guarded([&] {
    const auto oracle = ngs::ConjunctionOracle::from_signed(
        static_cast<unsigned>(num_qubits), std::span<const int>(literals, num_literals));
    ngs::apply_phase_flip(state->sv, oracle.predicate(), make_set(qubits, num_qubits));
  });
}

ng_status ng_state_diffusion(ng_state* state, const unsigned* qubits, size_t num_qubits) {
  if (!state) return bad_argument("state");
  return guarded([&] { ngs::apply_diffusion(state->sv, make_set(qubits, num_qubits)); });
}

ng_status ng_state_probability(const ng_state* state, uint64_t index, double* out) {
  if (!state || !out) return bad_argument("state/out");
  return guarded([&] {
    if (index >= state->sv.dimension()) throw ngs::ConfigError("basis index out of range");
    *out = std::norm(state->sv[index]);
  });
}

ng_status ng_state_purity(const ng_state* state, const unsigned* qubits, size_t num_qubits,
                          double* out) {
  if (!state || !out) return bad_argument("state/out");
  return guarded(
      [&] { *out = ngs::partition_purity(state->sv, make_set(qubits, num_qubits)); });
}

ng_status ng_state_sample(const ng_state* state, uint64_t shots, uint64_t seed, uint64_t* indices,
                          uint64_t* counts, size_t capacity, size_t* out_len) {
  if (!state || !indices || !counts || !out_len) return bad_argument("state/buffers");
  return guarded([&] {
    const auto hist = ngs::sample(state->sv, shots, seed);
    if (hist.size() > capacity) throw ArgumentError("histogram buffer too small");
    std::size_t i = 0;
    for (const auto& [index, count] : hist) {
      indices[i] = index;
      counts[i] = count;
      ++i;
    }
    *out_len = i;
  });
}

ng_status ng_iteration_count(uint64_t n, uint64_t k, uint64_t* out) {
  if (!out) return bad_argument("out");
  return guarded([&] { *out = ngs::iteration_count(n, k).r; });
}

ng_status ng_success_probability(uint64_t n, uint64_t k, uint64_t r, double* out) {
  if (!out) return bad_argument("out");
  return guarded([&] { *out = ngs::success_probability(n, k, r); });
}

ng_status ng_run_grover_literals(ng_state* state, const unsigned* qubits, size_t num_qubits,
                                 const int* literals, size_t num_literals, uint64_t r,
                                 uint64_t* oracle_calls) {
  if (!state || (num_literals > 0 && !literals)) return bad_argument("state/literals");
  return guarded([&] {
    const auto oracle = ngs::ConjunctionOracle::from_signed(
        static_cast<unsigned>(num_qubits), std::span<const int>(literals, num_literals));
    ngs::QueryCounter counter;
    ngs::run_grover(state->sv, oracle, make_set(qubits, num_qubits), r, counter);
    if (oracle_calls) *oracle_calls = counter.oracle_calls;
  });
}

ng_status ng_cost_eval(const char* strategy, unsigned m, unsigned v, int g, double* total,
                       int* valid) {
  if (!strategy || !total) return bad_argument("strategy/total");
  return guarded([&] {
    const auto s = ngs::parse_strategy(strategy);
    if (!s) throw ngs::ConfigError(std::string("unknown strategy '") + strategy + "'");
    std::optional<unsigned> split;
    if (g >= 0) split = static_cast<unsigned>(g);
    const auto b = ngs::cost_breakdown(*s, m, v, split);
    *total = b.total;
    if (valid) *valid = b.valid() ? 1 : 0;
  });
}

ng_status ng_cost_table(const char* m_range, const char* v_range, const char* strategies,
                        ng_format format, char** out) {
  if (!m_range || !v_range || !strategies || !out) return bad_argument("ranges/out");
  return guarded([&] {
    const auto rows = ngs::cost_table(ngs::parse_range(m_range), ngs::parse_range(v_range),
                                      parse_strategies(strategies));
    *out = copy_string(ngs::render_cost_table(rows, to_format(format)));
  });
}

ng_status ng_config_load_file(const char* path, ng_config** out) {
  if (!path || !out) return bad_argument("path/out");
  return guarded([&] { *out = new ng_config{ngs::load_config(path)}; });
}

ng_status ng_config_load_string(const char* text, ng_config** out) {
  if (!text || !out) return bad_argument("text/out");
  return guarded([&] { *out = new ng_config{ngs::parse_config(text)}; });
}

void ng_config_free(ng_config* config) { delete config; }

ng_status ng_config_set_seed(ng_config* config, uint64_t seed) {
  if (!config) return bad_argument("config");
  config->config.seed = seed;
  return NG_OK;
}

ng_status ng_config_set_shots(ng_config* config, uint64_t shots) {
  if (!config) return bad_argument("config");
  if (shots < 1) {
    g_last_error = "shots must be >= 1";
    return NG_ERR_CONFIG;
  }
  config->config.shots = shots;
  return NG_OK;
}

ng_status ng_config_format(const ng_config* config, ng_format* out) {
  if (!config || !out) return bad_argument("config/out");
  switch (config->config.format) {
    case ngs::OutputFormat::kJson: *out = NG_FORMAT_JSON; break;
    case ngs::OutputFormat::kCsv: *out = NG_FORMAT_CSV; break;
    case ngs::OutputFormat::kText: *out = NG_FORMAT_TEXT; break;
  }
  return NG_OK;
}

ng_status ng_config_to_json(const ng_config* config, char** out) {
  if (!config || !out) return bad_argument("config/out");
  return guarded([&] { *out = copy_string(ngs::config_to_json(config->config)); });
}

ng_status ng_run(const ng_config* config, ng_artifact** out) {
  if (!config || !out) return bad_argument("config/out");
  return guarded([&] { *out = new ng_artifact{ngs::run_experiment(config->config)}; });
}

void ng_artifact_free(ng_artifact* artifact) { delete artifact; }

ng_status ng_artifact_exit_code(const ng_artifact* artifact, int* out) {
  if (!artifact || !out) return bad_argument("artifact/out");
  *out = artifact->artifact.exit_code();
  return NG_OK;
}

ng_status ng_artifact_render(const ng_artifact* artifact, ng_format format, int include_timing,
                             char** out) {
  if (!artifact || !out) return bad_argument("artifact/out");
  return guarded([&] {
    *out = copy_string(ngs::render_run(artifact->artifact, to_format(format), include_timing != 0));
  });
}

ng_status ng_verify(const ng_config* config, ng_format format, char** report, int* passed) {
  if (!config || !report || !passed) return bad_argument("config/report/passed");
  return guarded([&] {
    const auto r = ngs::verify_experiment(config->config);
    *report = copy_string(ngs::render_verify(r, to_format(format)));
    *passed = r.passed ? 1 : 0;
  });
}

}  // extern "C"
