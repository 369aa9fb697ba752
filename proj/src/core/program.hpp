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
#include <string>
#include <variant>
#include <vector>

#include "core/dense.hpp"
#include "core/statevector.hpp"

namespace ngs {

/// Oracle and diffusion call tallies. Classical verification calls are
/// included in oracle_calls and also reported on their own.
struct QueryCounter {
  std::uint64_t oracle_calls = 0;
  std::uint64_t diffusion_calls = 0;
  std::uint64_t classical_checks = 0;

  friend bool operator==(const QueryCounter&, const QueryCounter&) = default;
};

struct PhaseFlipStep {
  QubitSet on;
  BitPredicate marks;
  bool is_query = true;  // false for bookkeeping flips that are not oracle calls
};

struct DiffusionStep {
  QubitSet on;
};

struct PermutationStep {
  QubitSet on;
  std::vector<std::uint64_t> mapping;
};

using Step = std::variant<PhaseFlipStep, DiffusionStep, PermutationStep>;

/// A straight-line sequence of register operations. Strategies build one of
/// these so the same circuit can run on the fast kernels and on the dense
/// reference path.
class Program {
 public:
  explicit Program(unsigned num_qubits) : num_qubits_(num_qubits) {}

  unsigned num_qubits() const { return num_qubits_; }
  const std::vector<Step>& steps() const { return steps_; }

  void phase_flip(QubitSet on, BitPredicate marks, bool is_query = true);
  void diffusion(QubitSet on);
  void permutation(QubitSet on, std::vector<std::uint64_t> mapping);
  void append(const Program& other);

 private:
  unsigned num_qubits_;
  std::vector<Step> steps_;
};

/// Runs on the in-place kernels and tallies queries into `counter`.
void execute(const Program& program, Statevector& sv, QueryCounter* counter = nullptr);

/// Runs every step as an explicit full-register matrix.
void execute_dense(const Program& program, Statevector& sv);

DenseMatrix step_matrix(const Step& step, unsigned num_qubits);

}  // namespace ngs
