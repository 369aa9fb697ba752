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

#ifndef NESTEDGROVER_NESTEDGROVER_H_
#define NESTEDGROVER_NESTEDGROVER_H_

/* C interface to the nestedgrover library.
 *
 * Every function returns an ng_status; NG_OK is zero. On failure a message
 * is available from ng_last_error() on the calling thread until the next
 * call on that thread. Handles are opaque and owned by the caller, who
 * releases them with the matching *_free function. Strings returned through
 * char** out-parameters are released with ng_string_free.
 *
 * Basis index convention: qubit q is bit q of the index. Bitstrings are
 * written most significant bit first, so "10101" is index 21.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NG_API __declspec(dllexport)
#elif defined(NESTEDGROVER_BUILDING)
#define NG_API __attribute__((visibility("default")))
#else
#define NG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ng_status {
  NG_OK = 0,
  NG_ERR_CONFIG = 1,        /* malformed input or parameters */
  NG_ERR_VALIDATION = 2,    /* input failed a structural check (bijection, unitarity) */
  NG_ERR_DOMAIN = 3,        /* value outside a formula's domain */
  NG_ERR_PRECONDITION = 4,  /* the problem does not satisfy the strategy's premise */
  NG_ERR_IO = 5,
  NG_ERR_INTERNAL = 6,
  NG_ERR_ARGUMENT = 7       /* null handle or pointer */
} ng_status;

typedef enum ng_format { NG_FORMAT_JSON = 0, NG_FORMAT_CSV = 1, NG_FORMAT_TEXT = 2 } ng_format;

typedef struct ng_state ng_state;
typedef struct ng_config ng_config;
typedef struct ng_artifact ng_artifact;

NG_API const char* ng_last_error(void);
NG_API const char* ng_version(void);
NG_API void ng_string_free(char* s);

/* Statevectors ------------------------------------------------------------ */

NG_API ng_status ng_state_create_uniform(unsigned num_qubits, ng_state** out);
NG_API ng_status ng_state_create_basis(unsigned num_qubits, uint64_t index, ng_state** out);
NG_API void ng_state_free(ng_state* state);
NG_API ng_status ng_state_num_qubits(const ng_state* state, unsigned* out);
/* Copies 2^n interleaved (re, im) pairs into `out`, which holds `capacity` doubles. */
NG_API ng_status ng_state_amplitudes(const ng_state* state, double* out, size_t capacity);
/* Flips the sign of the basis states whose pattern on `qubits` equals `pattern`. */
NG_API ng_status ng_state_phase_flip_pattern(ng_state* state, const unsigned* qubits,
                                             size_t num_qubits, uint64_t pattern);
/* Signed 1-based literals over the listed qubits: +j reads the j-th listed qubit as 1. */
NG_API ng_status ng_state_phase_flip_literals(ng_state* state, const unsigned* qubits,
                                              size_t num_qubits, const int* literals,
                                              size_t num_literals);
NG_API ng_status ng_state_diffusion(ng_state* state, const unsigned* qubits, size_t num_qubits);
NG_API ng_status ng_state_probability(const ng_state* state, uint64_t index, double* out);
/* Tr(rho^2) of the reduced state on `qubits`. */
NG_API ng_status ng_state_purity(const ng_state* state, const unsigned* qubits,
                                 size_t num_qubits, double* out);
/* Histogram as parallel arrays sorted by index; *out_len receives the
 * number of distinct outcomes and must not exceed `capacity`. */
NG_API ng_status ng_state_sample(const ng_state* state, uint64_t shots, uint64_t seed,
                                 uint64_t* indices, uint64_t* counts, size_t capacity,
                                 size_t* out_len);

/* Grover and costs ---------------------------------------------------------- */

NG_API ng_status ng_iteration_count(uint64_t n, uint64_t k, uint64_t* out);
NG_API ng_status ng_success_probability(uint64_t n, uint64_t k, uint64_t r, double* out);
/* r Grover iterations on `qubits` against a literal conjunction over them. */
NG_API ng_status ng_run_grover_literals(ng_state* state, const unsigned* qubits,
                                        size_t num_qubits, const int* literals,
                                        size_t num_literals, uint64_t r,
                                        uint64_t* oracle_calls);
/* strategy: baseline, decomposition-ideal, iterative, disentangled,
 * permutation-basis-prep or permutation-grover-prep. g < 0 uses m / 2. */
NG_API ng_status ng_cost_eval(const char* strategy, unsigned m, unsigned v, int g,
                              double* total, int* valid);
/* Ranges are "a..b", "a,b,c" or a single value; strategies is a comma list or "all". */
NG_API ng_status ng_cost_table(const char* m_range, const char* v_range, const char* strategies,
                               ng_format format, char** out);

/* Experiments --------------------------------------------------------------- */

NG_API ng_status ng_config_load_file(const char* path, ng_config** out);
NG_API ng_status ng_config_load_string(const char* text, ng_config** out);
NG_API void ng_config_free(ng_config* config);
NG_API ng_status ng_config_set_seed(ng_config* config, uint64_t seed);
NG_API ng_status ng_config_set_shots(ng_config* config, uint64_t shots);
NG_API ng_status ng_config_format(const ng_config* config, ng_format* out);
NG_API ng_status ng_config_to_json(const ng_config* config, char** out);

NG_API ng_status ng_run(const ng_config* config, ng_artifact** out);
NG_API void ng_artifact_free(ng_artifact* artifact);
/* 0 verified or prepared, 2 exhausted without a verified solution. */
NG_API ng_status ng_artifact_exit_code(const ng_artifact* artifact, int* out);
NG_API ng_status ng_artifact_render(const ng_artifact* artifact, ng_format format,
                                    int include_timing, char** out);
/* *passed is 1 when every dense/kernel comparison is within tolerance. */
NG_API ng_status ng_verify(const ng_config* config, ng_format format, char** report,
                           int* passed);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* NESTEDGROVER_NESTEDGROVER_H_ */
