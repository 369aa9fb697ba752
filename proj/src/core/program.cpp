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

#include "core/program.hpp"

#include "core/errors.hpp"

namespace ngs {

void Program::phase_flip(QubitSet on, BitPredicate marks, bool is_query) {
  on.check_within(num_qubits_);
  steps_.emplace_back(PhaseFlipStep{std::move(on), std::move(marks), is_query});
}

void Program::diffusion(QubitSet on) {
  if (on.empty()) throw ConfigError("diffusion needs at least one qubit");
  on.check_within(num_qubits_);
  steps_.emplace_back(DiffusionStep{std::move(on)});
}

void Program::permutation(QubitSet on, std::vector<std::uint64_t> mapping) {
  on.check_within(num_qubits_);
  if (mapping.size() != (std::size_t{1} << on.size())) {
    throw ConfigError("permutation size does not match the qubit set");
  }
  steps_.emplace_back(PermutationStep{std::move(on), std::move(mapping)});
}

void Program::append(const Program& other) {
  if (other.num_qubits_ != num_qubits_) throw ConfigError("program widths differ");
  steps_.insert(steps_.end(), other.steps_.begin(), other.steps_.end());
}

void execute(const Program& program, Statevector& sv, QueryCounter* counter) {
  if (sv.num_qubits() != program.num_qubits()) {
    throw ConfigError("program expects " + std::to_string(program.num_qubits()) +
                      " qubits, state has " + std::to_string(sv.num_qubits()));
  }
  for (const auto& step : program.steps()) {
    if (const auto* flip = std::get_if<PhaseFlipStep>(&step)) {
      apply_phase_flip(sv, flip->marks, flip->on);
      if (counter && flip->is_query) ++counter->oracle_calls;
    } else if (const auto* diff = std::get_if<DiffusionStep>(&step)) {
      apply_diffusion(sv, diff->on);
      if (counter) ++counter->diffusion_calls;
    } else {
      const auto& perm = std::get<PermutationStep>(step);
      apply_permutation(sv, perm.mapping, perm.on);
    }
  }
}

DenseMatrix step_matrix(const Step& step, unsigned num_qubits) {
  return std::visit(
      [num_qubits](const auto& s) -> DenseMatrix {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PhaseFlipStep>) {
          return phase_flip_matrix(num_qubits, s.marks, s.on);
        } else if constexpr (std::is_same_v<T, DiffusionStep>) {
          return diffusion_matrix(num_qubits, s.on);
        } else {
          return permutation_matrix(num_qubits, s.mapping, s.on);
        }
      },
      step);
}

void execute_dense(const Program& program, Statevector& sv) {
  if (sv.num_qubits() != program.num_qubits()) {
    throw ConfigError("program expects " + std::to_string(program.num_qubits()) +
                      " qubits, state has " + std::to_string(sv.num_qubits()));
  }
  for (const auto& step : program.steps()) {
    apply_dense_unitary(sv, step_matrix(step, program.num_qubits()));
  }
}

}  // namespace ngs
