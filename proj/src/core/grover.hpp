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

#include "core/oracle.hpp"
#include "core/program.hpp"
#include "core/statevector.hpp"

namespace ngs {

struct IterationPlan {
  std::uint64_t r = 0;
  // False when floor((pi/4) sqrt(n/k)) is 0: no iteration improves on k/n.
  bool amplification_useful = true;
};

/// r = floor((pi/4) * sqrt(n/k)) for 1 <= k <= n, n a power of two.
IterationPlan iteration_count(std::uint64_t n, std::uint64_t k);

/// sin^2((2r + 1) * asin(sqrt(k/n))).
double success_probability(std::uint64_t n, std::uint64_t k, std::uint64_t r);

/// Search register, marked-state count and iteration count for one
/// amplification run.
struct GroverPlan {
  QubitSet search_qubits;
  std::uint64_t marked = 1;
  std::uint64_t r = 0;

  /// r from iteration_count(2^|search_qubits|, marked).
  static GroverPlan automatic(QubitSet search_qubits, std::uint64_t marked);
};

/// Appends r repetitions of [phase flip(marks, on); diffusion(on)].
void append_grover(Program& program, const BitPredicate& marks, const QubitSet& on,
                   std::uint64_t r);

/// Runs r Grover iterations on `on`. The oracle reads exactly the qubits of
/// `on`, so its width must equal |on|.
void run_grover(Statevector& sv, unsigned oracle_width, const BitPredicate& marks,
                const QubitSet& on, std::uint64_t r, QueryCounter& counter);
void run_grover(Statevector& sv, const ConjunctionOracle& oracle, const QubitSet& on,
                std::uint64_t r, QueryCounter& counter);

}  // namespace ngs
