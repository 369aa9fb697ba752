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

#include "core/errors.hpp"
#include "core/grover.hpp"
#include "reference.hpp"

using namespace ngs;

TEST_SUITE("grover") {

TEST_CASE("iteration counts") {
  CHECK(iteration_count(4, 1).r == 1);
  CHECK(iteration_count(8, 1).r == 2);
  for (unsigned m = 2; m <= 20; ++m) {
    const std::uint64_t n = std::uint64_t{1} << m;
    CHECK(iteration_count(n, n / 4).r == 1);
    for (std::uint64_t k : {std::uint64_t{1}, std::uint64_t{3}, n / 2, n}) {
      CHECK(iteration_count(n, k).r == ngs_test::grover_rounds(double(n), double(k)));
    }
  }
  CHECK(iteration_count(2, 1).r == 1);
  CHECK(iteration_count(4, 4).r == 0);
  CHECK_THROWS_AS(iteration_count(6, 1), DomainError);
  CHECK_THROWS_AS(iteration_count(8, 0), DomainError);
  CHECK_THROWS_AS(iteration_count(8, 9), DomainError);
}

TEST_CASE("success probability") {
  CHECK(success_probability(4, 1, 1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(success_probability(8, 1, 2) == doctest::Approx(0.9453).epsilon(1e-4));
  CHECK(success_probability(16, 3, 0) == doctest::Approx(3.0 / 16));
}

TEST_CASE("one rotation finds 11 on two qubits") {
  auto sv = Statevector::uniform(2);
  QueryCounter c;
  run_grover(sv, ConjunctionOracle::from_signed(2, std::vector<int>{2, 1}), QubitSet{0, 1}, 1, c);
  CHECK(std::norm(sv[3]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(c.oracle_calls == 1);
}

TEST_CASE("simulated probability follows the closed form") {
  for (unsigned m = 1; m <= 8; ++m) {
    const std::uint64_t n = std::uint64_t{1} << m;
    for (std::uint64_t k = 1; k <= n; k = k * 2 + 1) {
      for (std::uint64_t r = 0; r <= 10; ++r) {
        auto sv = Statevector::uniform(m);
        QueryCounter c;
        const auto pred = [k](std::uint64_t x) { return x < k; };
        run_grover(sv, m, pred, QubitSet::range(0, m), r, c);
        double p = 0.0;
        for (std::uint64_t x = 0; x < k; ++x) p += std::norm(sv[x]);
        CHECK(p == doctest::Approx(ngs_test::grover_law(double(n), double(k), double(r))).epsilon(1e-9));
        CHECK(c.oracle_calls == r);
      }
    }
  }
}

TEST_CASE("r = 0 leaves the state alone") {
  auto sv = Statevector::uniform(3);
  const auto before = sv;
  QueryCounter c;
  run_grover(sv, ConjunctionOracle::from_signed(3, std::vector<int>{-3, 2, 1}), QubitSet::range(0, 3), 0, c);
  CHECK(max_abs_deviation(sv, before) == 0.0);
}

TEST_CASE("Grover on a subset leaves the other factor untouched") {
  // |101> on qubits 0..2, uniform on 3..5.
  std::vector<Amplitude> amps(64);
  for (std::uint64_t z = 0; z < 8; ++z) amps[(z << 3) | 0b101] = 1.0 / std::sqrt(8.0);
  auto sv = Statevector::from_amplitudes(amps);
  const auto before = marginal_probabilities(sv, QubitSet::range(0, 3));
  QueryCounter c;
  run_grover(sv, ConjunctionOracle::from_signed(3, std::vector<int>{3, 2, -1}),
             QubitSet::range(3, 6), 2, c);
  const auto after = marginal_probabilities(sv, QubitSet::range(0, 3));
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(std::abs(before[i] - after[i]) < 1e-12);
  CHECK(partition_purity(sv, QubitSet::range(0, 3)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::norm(sv[(0b110 << 3) | 0b101]) ==
        doctest::Approx(ngs_test::grover_law(8, 1, 2)).epsilon(1e-12));
}

TEST_CASE("oracle width must match the register") {
  auto sv = Statevector::uniform(3);
  QueryCounter c;
  CHECK_THROWS_AS(run_grover(sv, ConjunctionOracle::from_signed(2, std::vector<int>{1}),
                             QubitSet::range(0, 3), 1, c),
                  ConfigError);
}

TEST_CASE("automatic plan") {
  const auto plan = GroverPlan::automatic(QubitSet::range(0, 3), 1);
  CHECK(plan.r == 2);
  CHECK(plan.marked == 1);
}

}  // TEST_SUITE
