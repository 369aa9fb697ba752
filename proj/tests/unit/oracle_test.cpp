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

#include <random>

#include "core/errors.hpp"
#include "core/oracle.hpp"

using namespace ngs;

namespace {

BasisLabel bits(const char* s) { return BasisLabel::parse(s); }

ConjunctionOracle conj(unsigned width, std::vector<int> vars, unsigned offset = 0) {
  return ConjunctionOracle::from_signed(width, vars, offset);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("concatenation puts the upper part first") {
  CHECK(concat(bits("10"), bits("11")) == bits("1011"));
  CHECK(concat(BasisLabel{0, 0}, bits("101")) == bits("101"));
  CHECK(concat(bits("11"), bits("011")) == bits("11011"));
  CHECK(split(bits("11011"), 3) == std::pair{bits("11"), bits("011")});
  CHECK(split(bits("10101"), 3) == std::pair{bits("10"), bits("101")});
  CHECK(split(bits("1011"), 2) == std::pair{bits("10"), bits("11")});
  CHECK_THROWS_AS(split(bits("101"), 3), ConfigError);
}

TEST_CASE("concatenation is associative and split inverts it") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const unsigned wa = rng() % 6, wb = rng() % 6, wc = 1 + rng() % 6;
    const BasisLabel a{rng() % (1u << wa), wa}, b{rng() % (1u << wb), wb}, c{rng() % (1u << wc), wc};
    CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
    const auto [hi, lo] = split(concat(concat(a, b), c), wc);
    CHECK(hi == concat(a, b));
    CHECK(lo == c);
  }
}

TEST_CASE("signed literal grammar") {
  const auto h1 = conj(3, {-3, 2, 1});
  CHECK(h1.eval(bits("011")));
  CHECK(h1.marked_count() == 1);
  CHECK(h1.unique_target() == bits("011"));
  CHECK(h1.to_string() == "~x3 & x2 & x1");
  CHECK(h1.to_signed() == std::vector<int>{-3, 2, 1});

  const auto o = conj(5, {5, -4, 3, -2, 1});
  CHECK(o.eval(bits("10101")));
  CHECK_FALSE(o.eval(bits("10011")));
  CHECK_THROWS_AS(o.eval(bits("101")), ConfigError);

  CHECK_THROWS_AS(conj(3, {4}), ConfigError);
  CHECK_THROWS_AS(conj(3, {2, -2}), ConfigError);
}

TEST_CASE("upper oracles use full-register variable names") {
  const auto u = conj(3, {-6, -5, 4}, 3);
  CHECK(u.unique_target() == bits("001"));
  CHECK(u.to_string(3) == "~x6 & ~x5 & x4");
  CHECK(u.to_signed(3) == std::vector<int>{-6, -5, 4});
}

TEST_CASE("partial literal sets mark 2^(width - literals) strings") {
  for (unsigned w = 1; w <= 8; ++w) {
    std::vector<int> vars;
    for (unsigned j = 1; j <= w; ++j) {
      vars.push_back(j % 2 ? static_cast<int>(j) : -static_cast<int>(j));
      const auto o = conj(w, vars);
      std::uint64_t brute = 0;
      for (std::uint64_t x = 0; x < (1u << w); ++x) brute += o.eval(x);
      CHECK(o.marked_count() == brute);
      CHECK(brute == (1u << (w - j)));
      CHECK(o.unique_target().has_value() == (j == w));
    }
  }
}

TEST_CASE("concatenated oracle factors into upper and lower parts") {
  std::mt19937 rng(9);
  for (unsigned m = 2; m <= 8; ++m) {
    for (unsigned g = 1; g < m; ++g) {
      std::vector<int> vars;
      for (unsigned j = m; j >= 1; --j) vars.push_back(rng() % 2 ? int(j) : -int(j));
      const auto o = ConcatenatedOracle::from_signed(m, g, vars);
      CHECK(o.split_point() == g);
      std::uint64_t hits = 0;
      for (std::uint64_t x = 0; x < (1u << m); ++x) {
        const auto [z, y] = split(BasisLabel{x, m}, g);
        CHECK(o.eval(x) == (o.upper().eval(z) && o.lower().eval(y)));
        hits += o.eval(x);
      }
      CHECK(hits == 1);
      CHECK(o.target().has_value());
    }
  }
  const auto xi = ConcatenatedOracle::from_signed(5, 3, std::vector<int>{5, -4, 3, -2, 1});
  CHECK(xi.target() == bits("10101"));
  CHECK(xi.upper().unique_target() == bits("10"));
  CHECK(xi.lower().unique_target() == bits("101"));
}

TEST_CASE("candidate sets") {
  const PartialCandidateSet set(3, {0b011, 0b101});
  CHECK(set.size() == 2);
  CHECK(set.candidate(1) == bits("011"));
  CHECK(set.candidate_oracle(1).marked() == std::vector<std::uint64_t>{0b011});
  CHECK(set.candidate_oracle(2).marked() == std::vector<std::uint64_t>{0b101});
  CHECK(set.index_of(0b101) == 2u);
  CHECK_FALSE(set.index_of(0b111).has_value());
  const auto any = set.marks_any();
  CHECK(any(0b011));
  CHECK_FALSE(any(0b001));
  CHECK_THROWS_AS(set.candidate(3), ConfigError);
  CHECK_THROWS_AS(PartialCandidateSet(3, {1, 1}), ValidationError);
  CHECK_THROWS_AS(PartialCandidateSet(3, {8}), ConfigError);
  CHECK_THROWS_AS(PartialCandidateSet(3, {}), ConfigError);
  CHECK(PartialCandidateSet::from_labels({bits("011"), bits("101")}).values() == set.values());
}

TEST_CASE("flagged upper oracle needs both the flag and u") {
  const PartialCandidateSet set(3, {0b011, 0b101});
  const FlaggedUpperOracle f(bits("001"), 1, set);
  CHECK(f.eval(0b001, true));
  CHECK_FALSE(f.eval(0b001, false));
  CHECK_FALSE(f.eval(0b011, true));
  CHECK_THROWS_AS(FlaggedUpperOracle(bits("001"), 3, set), ConfigError);
}

TEST_CASE("path descriptors") {
  CHECK(path_encode({2, {1, 0, 1, 0, 1}}) == bits("10101"));
  CHECK(path_encode({2, {0, 0, 0}}).value == 0);
  const auto p = path_encode({3, {2, 1}});
  CHECK(p.value == 7);
  CHECK(p.width == 4);
  CHECK(path_decode(7, 3, 2).digits == std::vector<unsigned>{2, 1});
  CHECK_THROWS_AS(path_encode({2, {2}}), ConfigError);
  CHECK_THROWS_AS(path_decode(9, 3, 2), ConfigError);

  for (unsigned b : {2u, 3u, 4u}) {
    for (unsigned depth = 1; depth <= 6; ++depth) {
      std::uint64_t leaves = 1;
      for (unsigned i = 0; i < depth; ++i) leaves *= b;
      for (std::uint64_t v = 0; v < leaves; ++v) {
        CHECK(path_encode(path_decode(v, b, depth)).value == v);
      }
    }
  }
}

TEST_CASE("reduced branching factor") {
  CHECK(reduced_branching(2) == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(reduced_branching(4) == 2.0);
  CHECK(reduced_branching(9) == 3.0);
  CHECK_THROWS_AS(reduced_branching(1), DomainError);
}

}  // TEST_SUITE
