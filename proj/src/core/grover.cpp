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

#include "core/grover.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "core/errors.hpp"

namespace ngs {

IterationPlan iteration_count(std::uint64_t n, std::uint64_t k) {
  if (n == 0 || (n & (n - 1)) != 0) {
    throw DomainError("search space size " + std::to_string(n) + " is not a power of two");
  }
  if (k < 1 || k > n) {
    throw DomainError("marked count " + std::to_string(k) + " outside [1, " +
                      std::to_string(n) + "]");
  }
  const double x = std::numbers::pi / 4.0 *
                   std::sqrt(static_cast<double>(n) / static_cast<double>(k));
  const auto r = static_cast<std::uint64_t>(std::floor(x));
  return IterationPlan{r, r > 0};
}

double success_probability(std::uint64_t n, std::uint64_t k, std::uint64_t r) {
  if (k < 1 || k > n) {
    throw DomainError("marked count " + std::to_string(k) + " outside [1, " +
                      std::to_string(n) + "]");
  }
  const double theta = std::asin(std::sqrt(static_cast<double>(k) / static_cast<double>(n)));
  const double s = std::sin((2.0 * static_cast<double>(r) + 1.0) * theta);
  return s * s;
}

GroverPlan GroverPlan::automatic(QubitSet search_qubits, std::uint64_t marked) {
  if (search_qubits.empty()) throw ConfigError("empty search register");
  const std::uint64_t n = std::uint64_t{1} << search_qubits.size();
  const auto plan = iteration_count(n, marked);
  return GroverPlan{std::move(search_qubits), marked, plan.r};
}

void append_grover(Program& program, const BitPredicate& marks, const QubitSet& on,
                   std::uint64_t r) {
  for (std::uint64_t i = 0; i < r; ++i) {
    program.phase_flip(on, marks);
    program.diffusion(on);
  }
}

void run_grover(Statevector& sv, unsigned oracle_width, const BitPredicate& marks,
                const QubitSet& on, std::uint64_t r, QueryCounter& counter) {
  if (oracle_width != on.size()) {
    throw ConfigError("oracle width " + std::to_string(oracle_width) +
                      " does not match search register of " + std::to_string(on.size()) +
                      " qubits");
  }
  on.check_within(sv.num_qubits());
  for (std::uint64_t i = 0; i < r; ++i) {
    apply_phase_flip(sv, marks, on);
    apply_diffusion(sv, on);
  }
  counter.oracle_calls += r;
  counter.diffusion_calls += r;
}

void run_grover(Statevector& sv, const ConjunctionOracle& oracle, const QubitSet& on,
                std::uint64_t r, QueryCounter& counter) {
  run_grover(sv, oracle.width(), oracle.predicate(), on, r, counter);
}

}  // namespace ngs
