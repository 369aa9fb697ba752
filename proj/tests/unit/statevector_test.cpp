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

#include <numeric>
#include <random>

#include "core/errors.hpp"
#include "core/statevector.hpp"
#include "reference.hpp"

using namespace ngs;

namespace {

Statevector to_state(const ngs_test::Vec& v) {
  return Statevector::from_amplitudes(std::vector<Amplitude>(v.begin(), v.end()));
}

}  // namespace

TEST_SUITE("statevector") {

TEST_CASE("qubit q is bit q of the basis index") {
  auto label = BasisLabel::parse("10101");
  CHECK(label.value == 21);
  CHECK(label.width == 5);
  CHECK(label.bit(0));
  CHECK_FALSE(label.bit(1));
  CHECK(label.bit(4));
  CHECK(label.to_string() == "10101");
  CHECK(to_bitstring(3, 3) == "011");

  // Flipping the phase of qubit 0 alone touches exactly the odd indices.
  auto sv = Statevector::uniform(3);
  apply_phase_flip(sv, [](std::uint64_t x) { return x == 1; }, QubitSet{0});
  for (std::uint64_t i = 0; i < 8; ++i) {
    CHECK(sv[i].real() == doctest::Approx((i & 1) ? -1 / std::sqrt(8.0) : 1 / std::sqrt(8.0)));
  }

  // X on qubit 2 moves |000> to index 4, printed "100".
  auto b = Statevector::basis(3, 0);
  apply_controlled_x(b, {}, 2);
  CHECK(std::norm(b[4]) == doctest::Approx(1.0));
  CHECK(to_bitstring(4, 3) == "100");
}

TEST_CASE("bitstring parsing rejects junk") {
  CHECK_THROWS_AS(BasisLabel::parse("01a"), ConfigError);
  CHECK_THROWS_AS(BasisLabel::of(8, 3), ConfigError);
}

TEST_CASE("qubit sets gather and scatter") {
  const QubitSet s{1, 3};
  CHECK(s.mask() == 0b1010);
  CHECK(s.gather(0b1010) == 0b11);
  CHECK(s.gather(0b1000) == 0b10);
  CHECK(s.scatter(0b01) == 0b0010);
  CHECK(s.complement(4) == QubitSet{0, 2});
  CHECK(QubitSet::unite(QubitSet{0, 2}, QubitSet{1}) == QubitSet{0, 1, 2});
  CHECK_THROWS_AS(QubitSet({2, 1}), ConfigError);
  CHECK_THROWS_AS(QubitSet{5}.check_within(4), ConfigError);
}

TEST_CASE("uniform and basis states") {
  auto u = Statevector::uniform(4);
  CHECK(u.dimension() == 16);
  CHECK(u.norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Statevector::uniform(kMaxQubits + 1), ConfigError);
  CHECK_THROWS_AS(Statevector::basis(2, 4), ConfigError);
  CHECK_THROWS_AS(Statevector::from_amplitudes({1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(Statevector::from_amplitudes({1.0, 0.0, 0.0}), ConfigError);
}

TEST_CASE("kernels agree with the naive reference on random subsets") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const unsigned n = 2 + rng() % 5;
    std::vector<unsigned> on;
    for (unsigned q = 0; q < n; ++q) {
      if (rng() % 2) on.push_back(q);
    }
    if (on.empty()) on.push_back(rng() % n);
    const std::uint64_t target = rng() % (std::uint64_t{1} << on.size());
    auto pred = [target](std::uint64_t x) { return x == target || x == 0; };

    auto ref = ngs_test::uniform(n);
    ref[1 % ref.size()] *= -1.0;  // break the symmetry
    auto sv = to_state(ref);
    ngs_test::flip(ref, on, pred);
    ngs_test::diffuse(ref, on);
    apply_phase_flip(sv, pred, QubitSet(on));
    apply_diffusion(sv, QubitSet(on));
    CHECK(max_abs_deviation(sv, to_state(ref)) < 1e-12);
  }
}

TEST_CASE("permutation relabels basis states and checks bijectivity") {
  auto sv = Statevector::basis(3, 0b011);
  const std::vector<std::uint64_t> swap03{3, 1, 2, 0, 4, 5, 6, 7};
  apply_permutation(sv, swap03, QubitSet::range(0, 3));
  CHECK(std::norm(sv[0]) == doctest::Approx(1.0));
  const std::vector<std::uint64_t> bad{0, 0, 2, 3};
  CHECK_THROWS_AS(apply_permutation(sv, bad, QubitSet{0, 1}), ValidationError);
}

TEST_CASE("controlled X honors zero-polarity controls") {
  auto sv = Statevector::basis(3, 0b000);
  const Control c[] = {{0, false}, {1, false}};
  apply_controlled_x(sv, c, 2);
  CHECK(std::norm(sv[0b100]) == doctest::Approx(1.0));
  CHECK_THROWS_AS(apply_controlled_x(sv, c, 0), ConfigError);
}

TEST_CASE("marginals sum the complement") {
  ngs_test::Vec v(8, 0.0);
  v[0b101] = std::sqrt(0.25);
  v[0b001] = std::sqrt(0.75);
  const auto sv = to_state(v);
  const auto p = marginal_probabilities(sv, QubitSet{0, 2});
  CHECK(p[0b11] == doctest::Approx(0.25));
  CHECK(p[0b01] == doctest::Approx(0.75));
  CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("sampling is seeded and counts sum to shots") {
  auto sv = Statevector::uniform(4);
  apply_phase_flip(sv, [](std::uint64_t x) { return x == 9; }, QubitSet::range(0, 4));
  apply_diffusion(sv, QubitSet::range(0, 4));
  const auto a = sample(sv, 5000, 42);
  const auto b = sample(sv, 5000, 42);
  CHECK(a == b);
  std::uint64_t total = 0;
  for (const auto& [k, c] : a) total += c;
  CHECK(total == 5000);
  // P(9) = sin^2(3 asin(1/4)) ~ 0.473; loose statistical band.
  const double freq = a.at(9) / 5000.0;
  CHECK(freq == doctest::Approx(ngs_test::grover_law(16, 1, 1)).epsilon(0.08));
  CHECK_THROWS_AS(sample(sv, 0, 1), ConfigError);
}

TEST_CASE("purity matches the explicit reduced density matrix") {
  std::mt19937 rng(5);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 20; ++trial) {
    const unsigned n = 2 + rng() % 4;
    ngs_test::Vec v(std::size_t{1} << n);
    double norm = 0.0;
    for (auto& a : v) {
      a = {normal(rng), normal(rng)};
      norm += std::norm(a);
    }
    for (auto& a : v) a /= std::sqrt(norm);
    std::vector<unsigned> part;
    for (unsigned q = 0; q < n; ++q) {
      if (rng() % 2) part.push_back(q);
    }
    if (part.empty()) part.push_back(0);
    if (part.size() == n) part.pop_back();
    CHECK(partition_purity(to_state(v), QubitSet(part)) ==
          doctest::Approx(ngs_test::purity(v, n, part)).epsilon(1e-12));
  }
}

TEST_CASE("purity of product and Bell states") {
  CHECK(partition_purity(Statevector::uniform(4), QubitSet{0, 1}) ==
        doctest::Approx(1.0).epsilon(1e-12));
  ngs_test::Vec bell(4, 0.0);
  bell[0] = bell[3] = 1 / std::sqrt(2.0);
  CHECK(partition_purity(to_state(bell), QubitSet{0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(partition_purity(Statevector::uniform(2), QubitSet{}), ConfigError);
  CHECK_THROWS_AS(partition_purity(Statevector::uniform(2), QubitSet{0, 1}), ConfigError);
}

}  // TEST_SUITE
