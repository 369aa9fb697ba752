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

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/cost.hpp"
#include "core/dense.hpp"
#include "core/grover.hpp"
#include "core/oracle.hpp"
#include "core/program.hpp"
#include "core/statevector.hpp"

namespace ngs {

/// m-qubit search with lower subspace L = qubits [0, g) and upper subspace
/// U = qubits [g, m). The global oracle marks xi = u || l.
class SearchProblem {
 public:
  SearchProblem(ConcatenatedOracle global_oracle, PartialCandidateSet candidates,
                std::optional<ConjunctionOracle> upper_oracle = std::nullopt);

  unsigned m() const { return global_.width(); }
  unsigned g() const { return global_.split_point(); }
  unsigned upper_width() const { return m() - g(); }
  std::size_t v() const { return candidates_.size(); }

  const ConcatenatedOracle& global_oracle() const { return global_; }
  const PartialCandidateSet& candidates() const { return candidates_; }
  /// Explicit u(z) if one was given, otherwise the upper part of the global
  /// oracle.
  const ConjunctionOracle& upper_oracle() const;

  BasisLabel xi() const { return *global_.target(); }
  BasisLabel upper_target() const;  // u; throws PreconditionError if u(z) marks != 1 string
  BasisLabel lower_target() const { return *global_.lower().unique_target(); }

  QubitSet lower() const { return QubitSet::range(0, g()); }
  QubitSet upper() const { return QubitSet::range(g(), m()); }
  QubitSet all() const { return QubitSet::range(0, m()); }

 private:
  ConcatenatedOracle global_;
  PartialCandidateSet candidates_;
  std::optional<ConjunctionOracle> upper_;
};

struct SearchResult {
  std::optional<BasisLabel> found;
  std::optional<std::size_t> candidate_index;  // 1-based
  bool verified = false;
  QueryCounter queries;
  std::uint64_t trials = 0;
};

/// Most frequent outcome; ties go to the smaller basis index.
std::uint64_t modal_outcome(const Histogram& histogram);

// ---------------------------------------------------------------------------
// Entangled nested search and product-subspace search

/// Grover on L over all of the candidate set, then r_U iterations of
/// [global phase flip on all m qubits; diffusion on U].
Program entangled_program(const SearchProblem& problem);
/// Throws PreconditionError when l is not one of the candidates.
Statevector entangled_nested(const SearchProblem& problem, QueryCounter& counter);

/// Independent Grover runs: L over the candidate set, U over u(z).
Program product_program(const SearchProblem& problem);
Statevector product_subspace_search(const SearchProblem& problem, QueryCounter& counter);

// ---------------------------------------------------------------------------
// Iterative algorithm

/// One trial: Grover on L for h_k alone, then the global-oracle stage on U.
Program iterative_trial_program(const SearchProblem& problem, std::size_t k);

struct TrialRecord {
  std::size_t candidate_index = 0;
  BasisLabel top;
  std::uint64_t top_count = 0;
  double target_probability = 0.0;  // exact P(xi) of the trial state
  bool verified = false;
};

struct IterativeOutcome {
  SearchResult result;
  std::vector<TrialRecord> trials;
  Statevector final_state = Statevector::uniform(1);
  Histogram final_histogram;
};

// Default measurement budget per trial.
inline constexpr std::uint64_t kDefaultShotsPerTrial = 256;

/// Tries the candidates in order, measuring each trial and checking the most
/// frequent outcome against the global oracle. Exhaustion is reported through
/// result.verified = false.
IterativeOutcome iterative_search(const SearchProblem& problem, std::uint64_t shots_per_trial,
                                  std::uint64_t seed, QueryCounter& counter);

// ---------------------------------------------------------------------------
// Flag-based disentanglement

/// Register layout: L on [0, g), then for each candidate k a flag qubit
/// followed by an (m - g)-qubit copy of U.
struct DisentangledLayout {
  unsigned g = 0;
  unsigned upper_width = 0;
  unsigned v = 0;

  unsigned num_qubits() const { return g + v * (upper_width + 1); }
  QubitSet lower() const { return QubitSet::range(0, g); }
  unsigned flag_qubit(std::size_t k) const;  // 1-based k
  QubitSet block(std::size_t k) const;       // 1-based k
  QubitSet flags() const;
};

struct BlockReport {
  std::size_t k = 0;
  double branch_probability = 0.0;  // P(L = h_k)
  double target_in_branch = 0.0;    // P(block_k = u | L = h_k)
  double target_marginal = 0.0;     // P(block_k = u), L ignored
};

// A block whose in-branch P(u) exceeds this identifies h_k = l.
inline constexpr double kBlockDecisionThreshold = 0.8;

struct DisentangledOutcome {
  std::optional<std::size_t> winning_k;
  std::vector<BlockReport> blocks;
  double flag_residual = 0.0;  // P(any flag qubit reads 1) after uncompute
  Statevector state = Statevector::uniform(1);
  double recovery_probability = 0.0;  // P(h_k) after the final Grover on L
  SearchResult result;
};

Program disentangled_program(const SearchProblem& problem);
/// Uniform over L and every upper block, flags in |0>.
Statevector disentangled_initial_state(const SearchProblem& problem);
/// Needs v >= 2 and an upper oracle that marks a single u.
DisentangledOutcome disentangled_search(const SearchProblem& problem, QueryCounter& counter);

// ---------------------------------------------------------------------------
// Permutation compaction

enum class PermutationConvention { kStandard, kLittleEndian };

/// Bijection on g-bit lower strings sending h_k to the code of k - 1. The
/// standard form packs the codes into the low ceil(log2 v) qubits, the
/// little-endian form into the high ones.
struct PermutationSpec {
  unsigned width = 0;
  PermutationConvention convention = PermutationConvention::kStandard;
  std::vector<std::uint64_t> mapping;  // source -> destination
  std::vector<std::uint64_t> codes;    // destination of h_k, in candidate order
  unsigned index_qubits = 0;           // ceil(log2 v)

  std::vector<std::uint64_t> inverse() const;
  DenseMatrix matrix() const;
  /// Qubits of L that carry the compacted candidate index.
  QubitSet index_qubit_set() const;
};

/// Candidates go to their codes; codes that were occupied by non-candidates
/// move, in ascending order, into the vacated candidate slots in ascending
/// order. Every other string is fixed.
PermutationSpec build_permutation(const PartialCandidateSet& h_paths,
                                  PermutationConvention convention);

struct Gate {
  std::vector<Control> controls;
  unsigned target = 0;
};

/// Controlled-NOT realization of a PermutationSpec on g data qubits plus one
/// flag ancilla per transposition. Flags start and end in |0>.
struct CnotCircuit {
  unsigned data_qubits = 0;
  unsigned flag_qubits = 0;
  std::vector<Gate> gates;

  unsigned num_qubits() const { return data_qubits + flag_qubits; }
};

CnotCircuit cnot_permutation_circuit(const PermutationSpec& spec);
void apply_circuit(Statevector& sv, const CnotCircuit& circuit);

struct CircuitCheck {
  bool agrees = false;
  std::size_t basis_states = 0;
  double max_deviation = 0.0;  // 1 when some input lands off its mapped index
  double flag_residual = 0.0;  // 1 when some input leaves a flag set
};

/// Runs every g-qubit basis state through the circuit.
CircuitCheck check_cnot_circuit(const PermutationSpec& spec, const CnotCircuit& circuit);

/// L over the candidates (Grover, or nothing for basis preparation), then P
/// on L, Grover on U plus the index qubits against the conjugated global
/// oracle, then the transpose of P.
Program permutation_program(const SearchProblem& problem, const PermutationSpec& spec,
                            PrepMode prep);
Statevector permutation_initial_state(const SearchProblem& problem, PrepMode prep);

struct PermutationOutcome {
  SearchResult result;
  PermutationSpec spec;
  Statevector state = Statevector::uniform(1);
  Histogram histogram;
  double target_probability = 0.0;
};

PermutationOutcome permutation_search(const SearchProblem& problem,
                                      PermutationConvention convention, PrepMode prep,
                                      std::uint64_t shots, std::uint64_t seed,
                                      QueryCounter& counter);

}  // namespace ngs
