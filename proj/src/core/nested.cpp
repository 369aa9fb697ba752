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

#include "core/nested.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "core/errors.hpp"

namespace ngs {

namespace {

std::uint64_t pow2(unsigned bits) { return std::uint64_t{1} << bits; }

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

unsigned ceil_log2(std::uint64_t v) {
  unsigned c = 0;
  while (pow2(c) < v) ++c;
  return c;
}

std::uint64_t reverse_bits(std::uint64_t x, unsigned width) {
  std::uint64_t r = 0;
  for (unsigned i = 0; i < width; ++i) r |= ((x >> i) & 1u) << (width - 1 - i);
  return r;
}

// r_U stage shared by the entangled and iterative strategies: the global
// oracle marks on the full register, the diffusion acts on U only.
void append_global_stage(Program& p, const SearchProblem& problem) {
  const auto r_u = iteration_count(pow2(problem.upper_width()), 1).r;
  const auto marks = problem.global_oracle().predicate();
  for (std::uint64_t i = 0; i < r_u; ++i) {
    p.phase_flip(problem.all(), marks);
    p.diffusion(problem.upper());
  }
}

bool check_classically(const SearchProblem& problem, const BasisLabel& x, QueryCounter& counter) {
  ++counter.oracle_calls;
  ++counter.classical_checks;
  return problem.global_oracle().eval(x);
}

QueryCounter delta(const QueryCounter& after, const QueryCounter& before) {
  return QueryCounter{after.oracle_calls - before.oracle_calls,
                      after.diffusion_calls - before.diffusion_calls,
                      after.classical_checks - before.classical_checks};
}

}  // namespace

// ---------------------------------------------------------------------------

SearchProblem::SearchProblem(ConcatenatedOracle global_oracle, PartialCandidateSet candidates,
                             std::optional<ConjunctionOracle> upper_oracle)
    : global_(std::move(global_oracle)),
      candidates_(std::move(candidates)),
      upper_(std::move(upper_oracle)) {
  if (!global_.target()) {
    throw ConfigError("global oracle must constrain all " + std::to_string(m()) +
                      " variables (it marks " + std::to_string(global_.marked_count()) +
                      " strings)");
  }
  if (candidates_.width() != g()) {
    throw ConfigError("candidates have width " + std::to_string(candidates_.width()) +
                      ", lower subspace has " + std::to_string(g()));
  }
  if (upper_ && upper_->width() != upper_width()) {
    throw ConfigError("upper oracle has width " + std::to_string(upper_->width()) +
                      ", upper subspace has " + std::to_string(upper_width()));
  }
}

const ConjunctionOracle& SearchProblem::upper_oracle() const {
  return upper_ ? *upper_ : global_.upper();
}

BasisLabel SearchProblem::upper_target() const {
  auto u = upper_oracle().unique_target();
  if (!u) {
    throw PreconditionError("upper oracle marks " +
                            std::to_string(upper_oracle().marked_count()) +
                            " strings; exactly one is required");
  }
  return *u;
}

std::uint64_t modal_outcome(const Histogram& histogram) {
  if (histogram.empty()) throw ConfigError("empty histogram");
  auto best = histogram.begin();
  for (auto it = histogram.begin(); it != histogram.end(); ++it) {
    if (it->second > best->second) best = it;
  }
  return best->first;
}

// ---------------------------------------------------------------------------

Program entangled_program(const SearchProblem& problem) {
  Program p(problem.m());
  const auto r_l = iteration_count(pow2(problem.g()), problem.v()).r;
  append_grover(p, problem.candidates().marks_any(), problem.lower(), r_l);
  append_global_stage(p, problem);
  return p;
}

Statevector entangled_nested(const SearchProblem& problem, QueryCounter& counter) {
  if (!problem.candidates().contains(problem.lower_target().value)) {
    throw PreconditionError("lower solution " + problem.lower_target().to_string() +
                            " is not among the candidates");
  }
  auto sv = Statevector::uniform(problem.m());
  execute(entangled_program(problem), sv, &counter);
  return sv;
}

Program product_program(const SearchProblem& problem) {
  Program p(problem.m());
  const auto r_l = iteration_count(pow2(problem.g()), problem.v()).r;
  append_grover(p, problem.candidates().marks_any(), problem.lower(), r_l);
  const auto& upper = problem.upper_oracle();
  const auto r_u = iteration_count(pow2(problem.upper_width()), upper.marked_count()).r;
  append_grover(p, upper.predicate(), problem.upper(), r_u);
  return p;
}

Statevector product_subspace_search(const SearchProblem& problem, QueryCounter& counter) {
  problem.upper_target();  // exactly one u
  auto sv = Statevector::uniform(problem.m());
  execute(product_program(problem), sv, &counter);
  return sv;
}

// ---------------------------------------------------------------------------

Program iterative_trial_program(const SearchProblem& problem, std::size_t k) {
  Program p(problem.m());
  const auto r_l = iteration_count(pow2(problem.g()), 1).r;
  append_grover(p, problem.candidates().candidate_oracle(k).predicate(), problem.lower(), r_l);
  append_global_stage(p, problem);
  return p;
}

IterativeOutcome iterative_search(const SearchProblem& problem, std::uint64_t shots_per_trial,
                                  std::uint64_t seed, QueryCounter& counter) {
  if (shots_per_trial < 1) throw ConfigError("shots per trial must be >= 1");
  const QueryCounter start = counter;
  const BasisLabel xi = problem.xi();
  IterativeOutcome out;
  for (std::size_t k = 1; k <= problem.v(); ++k) {
    auto sv = Statevector::uniform(problem.m());
    execute(iterative_trial_program(problem, k), sv, &counter);
    auto hist = sample(sv, shots_per_trial, derive_seed(seed, k));
    const auto top = BasisLabel{modal_outcome(hist), problem.m()};
    const bool ok = check_classically(problem, top, counter);
    out.trials.push_back(TrialRecord{k, top, hist[top.value], std::norm(sv[xi.value]), ok});
    out.result.trials = k;
    out.final_state = std::move(sv);
    out.final_histogram = std::move(hist);
    if (ok) {
      out.result.found = top;
      out.result.candidate_index = k;
      out.result.verified = true;
      break;
    }
  }
  out.result.queries = delta(counter, start);
  return out;
}

// ---------------------------------------------------------------------------

unsigned DisentangledLayout::flag_qubit(std::size_t k) const {
  if (k < 1 || k > v) throw ConfigError("block index out of range");
  return g + static_cast<unsigned>(k - 1) * (upper_width + 1);
}

QubitSet DisentangledLayout::block(std::size_t k) const {
  const unsigned f = flag_qubit(k);
  return QubitSet::range(f + 1, f + 1 + upper_width);
}

QubitSet DisentangledLayout::flags() const {
  std::vector<unsigned> f;
  for (std::size_t k = 1; k <= v; ++k) f.push_back(flag_qubit(k));
  return QubitSet(std::move(f));
}

namespace {

DisentangledLayout layout_for(const SearchProblem& problem) {
  DisentangledLayout layout{problem.g(), problem.upper_width(),
                            static_cast<unsigned>(problem.v())};
  if (layout.num_qubits() > kMaxQubits) {
    throw ConfigError("disentangled register needs " + std::to_string(layout.num_qubits()) +
                      " qubits, cap is " + std::to_string(kMaxQubits));
  }
  return layout;
}

// flag_k ^= [L == h_k], as a relabeling of the (L, flag_k) patterns.
void append_flag_toggle(Program& p, const DisentangledLayout& layout, std::size_t k,
                        std::uint64_t h_k) {
  const QubitSet on = QubitSet::unite(layout.lower(), QubitSet{layout.flag_qubit(k)});
  const std::uint64_t low_mask = pow2(layout.g) - 1;
  std::vector<std::uint64_t> mapping(pow2(layout.g + 1));
  for (std::uint64_t x = 0; x < mapping.size(); ++x) {
    mapping[x] = (x & low_mask) == h_k ? x ^ pow2(layout.g) : x;
  }
  p.permutation(on, std::move(mapping));
}

}  // namespace

Program disentangled_program(const SearchProblem& problem) {
  const auto layout = layout_for(problem);
  const auto& cands = problem.candidates();
  const BasisLabel u = problem.upper_target();
  const ConcatenatedOracle global = problem.global_oracle();
  const unsigned g = layout.g;
  const unsigned w = layout.upper_width;
  Program p(layout.num_qubits());

  const auto r_l = iteration_count(pow2(g), cands.size()).r;
  append_grover(p, cands.marks_any(), layout.lower(), r_l);

  for (std::size_t k = 1; k <= cands.size(); ++k) append_flag_toggle(p, layout, k, cands.values()[k - 1]);

  // Block k sees (L, flag_k, z_k) as local bits [0, g), g, [g + 1, g + 1 + w).
  // Its oracle is u~(k) combined with the global oracle on z_k || L, so inside
  // the flagged branch it is exactly the global oracle.
  const auto r_u = iteration_count(pow2(w), 1).r;
  for (std::size_t k = 1; k <= cands.size(); ++k) {
    const FlaggedUpperOracle flagged(u, k, cands);
    const QubitSet on = QubitSet::unite(
        QubitSet::unite(layout.lower(), QubitSet{layout.flag_qubit(k)}), layout.block(k));
    const BitPredicate marks = [flagged, global, g, w](std::uint64_t bits) {
      const std::uint64_t y = bits & (pow2(g) - 1);
      const bool flag = ((bits >> g) & 1u) != 0;
      const std::uint64_t z = (bits >> (g + 1)) & (pow2(w) - 1);
      return flagged.eval(z, flag) && global.eval((z << g) | y);
    };
    for (std::uint64_t i = 0; i < r_u; ++i) {
      p.phase_flip(on, marks);
      p.diffusion(layout.block(k));
    }
  }

  for (std::size_t k = 1; k <= cands.size(); ++k) append_flag_toggle(p, layout, k, cands.values()[k - 1]);
  return p;
}

Statevector disentangled_initial_state(const SearchProblem& problem) {
  const auto layout = layout_for(problem);
  const std::uint64_t flag_mask = layout.flags().mask();
  const unsigned free_qubits = layout.num_qubits() - layout.v;
  const double a = 1.0 / std::sqrt(static_cast<double>(pow2(free_qubits)));
  std::vector<Amplitude> amps(pow2(layout.num_qubits()));
  for (std::uint64_t i = 0; i < amps.size(); ++i) {
    if ((i & flag_mask) == 0) amps[i] = a;
  }
  return Statevector::from_amplitudes(std::move(amps));
}

DisentangledOutcome disentangled_search(const SearchProblem& problem, QueryCounter& counter) {
  if (problem.v() < 2) throw PreconditionError("disentanglement needs at least two candidates");
  const BasisLabel u = problem.upper_target();
  const auto layout = layout_for(problem);
  const auto& cands = problem.candidates();
  const QueryCounter start = counter;

  DisentangledOutcome out;
  out.state = disentangled_initial_state(problem);
  execute(disentangled_program(problem), out.state, &counter);

  const std::uint64_t low_mask = pow2(layout.g) - 1;
  const std::uint64_t flag_mask = layout.flags().mask();
  std::vector<QubitSet> blocks;
  for (std::size_t k = 1; k <= cands.size(); ++k) blocks.push_back(layout.block(k));
  std::vector<double> in_branch(cands.size(), 0.0);
  std::vector<double> branch(cands.size(), 0.0);
  std::vector<double> marginal(cands.size(), 0.0);
  for (std::uint64_t i = 0; i < out.state.dimension(); ++i) {
    const double p = std::norm(out.state[i]);
    if (p == 0.0) continue;
    if (i & flag_mask) out.flag_residual += p;
    const std::uint64_t y = i & low_mask;
    for (std::size_t k = 0; k < cands.size(); ++k) {
      const bool hit = blocks[k].gather(i) == u.value;
      if (hit) marginal[k] += p;
      if (y == cands.values()[k]) {
        branch[k] += p;
        if (hit) in_branch[k] += p;
      }
    }
  }

  double best = kBlockDecisionThreshold;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    BlockReport r;
    r.k = k + 1;
    r.branch_probability = branch[k];
    r.target_in_branch = branch[k] > 0.0 ? in_branch[k] / branch[k] : 0.0;
    r.target_marginal = marginal[k];
    if (r.target_in_branch > best) {
      best = r.target_in_branch;
      out.winning_k = r.k;
    }
    out.blocks.push_back(r);
  }

  if (out.winning_k) {
    // Recover h_k on a fresh lower register.
    const std::size_t k = *out.winning_k;
    auto lower = Statevector::uniform(layout.g);
    const auto r_l = iteration_count(pow2(layout.g), 1).r;
    run_grover(lower, cands.candidate_oracle(k), QubitSet::range(0, layout.g), r_l, counter);
    const auto probs = probabilities(lower);
    const auto argmax = static_cast<std::uint64_t>(
        std::max_element(probs.begin(), probs.end()) - probs.begin());
    out.recovery_probability = probs[cands.values()[k - 1]];
    const BasisLabel found = concat(u, BasisLabel{argmax, layout.g});
    out.result.found = found;
    out.result.candidate_index = k;
    out.result.verified = check_classically(problem, found, counter);
    out.result.trials = 1;
  }
  out.result.queries = delta(counter, start);
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::uint64_t> PermutationSpec::inverse() const {
  std::vector<std::uint64_t> inv(mapping.size());
  for (std::uint64_t x = 0; x < mapping.size(); ++x) inv[mapping[x]] = x;
  return inv;
}

DenseMatrix PermutationSpec::matrix() const { return DenseMatrix::from_permutation(mapping); }

QubitSet PermutationSpec::index_qubit_set() const {
  return convention == PermutationConvention::kStandard
             ? QubitSet::range(0, index_qubits)
             : QubitSet::range(width - index_qubits, width);
}

PermutationSpec build_permutation(const PartialCandidateSet& h_paths,
                                  PermutationConvention convention) {
  PermutationSpec spec;
  spec.width = h_paths.width();
  spec.convention = convention;
  spec.index_qubits = ceil_log2(h_paths.size());
  const std::uint64_t dim = pow2(spec.width);
  spec.mapping.resize(dim);
  for (std::uint64_t x = 0; x < dim; ++x) spec.mapping[x] = x;

  const auto& cands = h_paths.values();
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const std::uint64_t code =
        convention == PermutationConvention::kStandard ? k : reverse_bits(k, spec.width);
    spec.codes.push_back(code);
    spec.mapping[cands[k]] = code;
  }
  std::vector<std::uint64_t> displaced;  // codes held by non-candidates
  std::vector<std::uint64_t> vacated;    // candidate strings that are not codes
  for (std::uint64_t code : spec.codes) {
    if (!h_paths.contains(code)) displaced.push_back(code);
  }
  for (std::uint64_t c : cands) {
    if (std::find(spec.codes.begin(), spec.codes.end(), c) == spec.codes.end()) {
      vacated.push_back(c);
    }
  }
  std::sort(displaced.begin(), displaced.end());
  std::sort(vacated.begin(), vacated.end());
  for (std::size_t i = 0; i < displaced.size(); ++i) spec.mapping[displaced[i]] = vacated[i];
  return spec;
}

namespace {

std::vector<Control> match_controls(std::uint64_t pattern, unsigned width) {
  std::vector<Control> c;
  for (unsigned q = 0; q < width; ++q) c.push_back(Control{q, ((pattern >> q) & 1u) != 0});
  return c;
}

}  // namespace

CnotCircuit cnot_permutation_circuit(const PermutationSpec& spec) {
  // Cycle (c0 c1 ... cn) == swap(c0, c1) then swap(c0, c2) ... swap(c0, cn).
  std::vector<std::pair<std::uint64_t, std::uint64_t>> swaps;
  std::vector<char> seen(spec.mapping.size(), 0);
  for (std::uint64_t s = 0; s < spec.mapping.size(); ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    for (std::uint64_t x = spec.mapping[s]; x != s; x = spec.mapping[x]) {
      seen[x] = 1;
      swaps.emplace_back(s, x);
    }
  }

  CnotCircuit circuit;
  circuit.data_qubits = spec.width;
  circuit.flag_qubits = static_cast<unsigned>(
      std::min<std::size_t>(std::max<std::size_t>(swaps.size(), 1), kMaxQubits - spec.width));
  for (std::size_t i = 0; i < swaps.size(); ++i) {
    const auto [a, b] = swaps[i];
    const unsigned flag = spec.width + static_cast<unsigned>(i % circuit.flag_qubits);
    const auto mark = [&](std::uint64_t pattern) {
      circuit.gates.push_back(Gate{match_controls(pattern, spec.width), flag});
    };
    mark(a);
    mark(b);
    for (unsigned q = 0; q < spec.width; ++q) {
      if (((a ^ b) >> q) & 1u) circuit.gates.push_back(Gate{{Control{flag, true}}, q});
    }
    mark(a);
    mark(b);
  }
  return circuit;
}

void apply_circuit(Statevector& sv, const CnotCircuit& circuit) {
  if (sv.num_qubits() != circuit.num_qubits()) throw ConfigError("circuit width mismatch");
  for (const auto& gate : circuit.gates) apply_controlled_x(sv, gate.controls, gate.target);
}

CircuitCheck check_cnot_circuit(const PermutationSpec& spec, const CnotCircuit& circuit) {
  // Every gate is a controlled X, so each basis input can be tracked as an index.
  if (circuit.data_qubits != spec.width) throw ConfigError("circuit width differs from spec");
  const std::uint64_t data_mask = pow2(circuit.data_qubits) - 1;
  CircuitCheck check;
  for (std::uint64_t b = 0; b < pow2(spec.width); ++b) {
    std::uint64_t x = b;
    for (const auto& gate : circuit.gates) {
      const bool fire = std::all_of(gate.controls.begin(), gate.controls.end(), [x](const Control& c) {
        return (((x >> c.qubit) & 1u) != 0) == c.on_one;
      });
      if (fire) x ^= std::uint64_t{1} << gate.target;
    }
    if (x & ~data_mask) check.flag_residual = 1.0;
    if (x != spec.mapping[b]) check.max_deviation = 1.0;
    ++check.basis_states;
  }
  check.agrees = check.max_deviation == 0.0 && check.flag_residual == 0.0;
  return check;
}

Program permutation_program(const SearchProblem& problem, const PermutationSpec& spec,
                            PrepMode prep) {
  if (spec.width != problem.g()) throw ConfigError("permutation width differs from g");
  Program p(problem.m());
  if (prep == PrepMode::kGrover) {
    const auto r_l = iteration_count(pow2(problem.g()), problem.v()).r;
    append_grover(p, problem.candidates().marks_any(), problem.lower(), r_l);
  }
  p.permutation(problem.lower(), spec.mapping);

  const QubitSet search = QubitSet::unite(spec.index_qubit_set(), problem.upper());
  const auto r = iteration_count(pow2(static_cast<unsigned>(search.size())), 1).r;
  const unsigned g = problem.g();
  const BitPredicate conjugated = [inv = spec.inverse(), global = problem.global_oracle(),
                                   g](std::uint64_t x) {
    const std::uint64_t low = x & (pow2(g) - 1);
    return global.eval(((x >> g) << g) | inv[low]);
  };
  for (std::uint64_t i = 0; i < r; ++i) {
    p.phase_flip(problem.all(), conjugated);
    p.diffusion(search);
  }
  p.permutation(problem.lower(), spec.inverse());
  return p;
}

Statevector permutation_initial_state(const SearchProblem& problem, PrepMode prep) {
  if (prep == PrepMode::kGrover) return Statevector::uniform(problem.m());
  // Basis encoding: uniform over U, uniform over the candidates on L.
  const auto& cands = problem.candidates().values();
  const double a = 1.0 / std::sqrt(static_cast<double>(cands.size() * pow2(problem.upper_width())));
  std::vector<Amplitude> amps(pow2(problem.m()));
  for (std::uint64_t z = 0; z < pow2(problem.upper_width()); ++z) {
    for (std::uint64_t h : cands) amps[(z << problem.g()) | h] = a;
  }
  return Statevector::from_amplitudes(std::move(amps));
}

PermutationOutcome permutation_search(const SearchProblem& problem,
                                      PermutationConvention convention, PrepMode prep,
                                      std::uint64_t shots, std::uint64_t seed,
                                      QueryCounter& counter) {
  const QueryCounter start = counter;
  PermutationOutcome out;
  out.spec = build_permutation(problem.candidates(), convention);
  out.state = permutation_initial_state(problem, prep);
  execute(permutation_program(problem, out.spec, prep), out.state, &counter);
  out.target_probability = std::norm(out.state[problem.xi().value]);
  out.histogram = sample(out.state, shots, seed);
  const BasisLabel top{modal_outcome(out.histogram), problem.m()};
  out.result.trials = 1;
  if (check_classically(problem, top, counter)) {
    out.result.found = top;
    out.result.candidate_index = problem.candidates().index_of(problem.lower_target().value);
    out.result.verified = true;
  }
  out.result.queries = delta(counter, start);
  return out;
}

}  // namespace ngs
