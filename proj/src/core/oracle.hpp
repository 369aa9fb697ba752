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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/statevector.hpp"

namespace ngs {

// ---------------------------------------------------------------------------
// Bit strings

/// upper followed by lower, e.g. 10 || 11 = 1011.
BasisLabel concat(const BasisLabel& upper, const BasisLabel& lower);

/// Inverse of concat: the lower part keeps the g least significant bits.
std::pair<BasisLabel, BasisLabel> split(const BasisLabel& x, unsigned g);

// ---------------------------------------------------------------------------
// Oracles

struct Literal {
  unsigned position = 0;  // bit position inside the oracle's own register
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

/// AND of literals over a `width`-bit register. With every position covered
/// it marks exactly one string; with fewer it marks 2^(width - #literals).
class ConjunctionOracle {
 public:
  ConjunctionOracle(unsigned width, std::vector<Literal> literals);

  /// Signed 1-based variables: -3 means "not x3". Variable x_j maps to bit
  /// position j - 1 - offset, so an upper-register oracle can be written with
  /// the variable names of the full register.
  static ConjunctionOracle from_signed(unsigned width, std::span<const int> variables,
                                       unsigned offset = 0);
  /// Marks exactly `target`.
  static ConjunctionOracle exact(const BasisLabel& target);

  unsigned width() const { return width_; }
  const std::vector<Literal>& literals() const { return literals_; }

  bool eval(std::uint64_t bits) const;
  /// Throws ConfigError if the label width differs from the oracle width.
  bool eval(const BasisLabel& bits) const;

  std::uint64_t marked_count() const;
  std::vector<std::uint64_t> marked() const;
  std::optional<BasisLabel> unique_target() const;

  std::vector<int> to_signed(unsigned offset = 0) const;
  std::string to_string(unsigned offset = 0) const;
  BitPredicate predicate() const;

 private:
  unsigned width_;
  std::vector<Literal> literals_;
  std::uint64_t care_mask_ = 0;
  std::uint64_t care_value_ = 0;
};

/// Global oracle factored into an upper part u(z) on bits [g, m) and a lower
/// part l(y) on bits [0, g). The marked string is xi = u || l.
class ConcatenatedOracle {
 public:
  ConcatenatedOracle(ConjunctionOracle upper, ConjunctionOracle lower);

  /// Splits a signed literal list over x1..xm at g.
  static ConcatenatedOracle from_signed(unsigned m, unsigned g, std::span<const int> variables);

  unsigned width() const { return upper_.width() + lower_.width(); }
  unsigned split_point() const { return lower_.width(); }
  const ConjunctionOracle& upper() const { return upper_; }
  const ConjunctionOracle& lower() const { return lower_; }

  bool eval(std::uint64_t bits) const;
  bool eval(const BasisLabel& bits) const;
  std::uint64_t marked_count() const { return upper_.marked_count() * lower_.marked_count(); }

  /// xi when both parts mark a single string.
  std::optional<BasisLabel> target() const;

  std::vector<int> to_signed() const;
  BitPredicate predicate() const;

 private:
  ConjunctionOracle upper_;
  ConjunctionOracle lower_;
};

/// The candidate lower strings h_1..h_v (1-based indexing in the API).
class PartialCandidateSet {
 public:
  PartialCandidateSet(unsigned width, std::vector<std::uint64_t> candidates);
  static PartialCandidateSet from_labels(const std::vector<BasisLabel>& labels);

  unsigned width() const { return width_; }
  std::size_t size() const { return candidates_.size(); }
  const std::vector<std::uint64_t>& values() const { return candidates_; }
  BasisLabel candidate(std::size_t k) const;

  /// h^(k): marks exactly h_k. Throws ConfigError for k outside [1, v].
  ConjunctionOracle candidate_oracle(std::size_t k) const;

  bool contains(std::uint64_t y) const;
  std::optional<std::size_t> index_of(std::uint64_t y) const;
  BitPredicate marks_any() const;

 private:
  unsigned width_;
  std::vector<std::uint64_t> candidates_;
};

/// u~(k)(z) = 1 iff z = u and flag_k = 1.
class FlaggedUpperOracle {
 public:
  FlaggedUpperOracle(BasisLabel upper_target, std::size_t flag_index,
                     const PartialCandidateSet& candidates);

  const BasisLabel& upper_target() const { return upper_target_; }
  std::size_t flag_index() const { return flag_index_; }
  bool eval(std::uint64_t z, bool flag) const { return flag && z == upper_target_.value; }

 private:
  BasisLabel upper_target_;
  std::size_t flag_index_;
};

// ---------------------------------------------------------------------------
// Tree paths

/// Root-to-leaf path in a uniform tree: digits[0] is the first decision and
/// the most significant base-B digit.
struct PathDescriptor {
  unsigned branching = 2;
  std::vector<unsigned> digits;
};

/// Base-B value of the path, in the smallest binary width that holds B^depth
/// leaves. Throws ConfigError when B^depth > 2^20 or a digit is >= B.
BasisLabel path_encode(const PathDescriptor& path);
PathDescriptor path_decode(std::uint64_t value, unsigned branching, unsigned depth);

/// b_q = sqrt(B).
double reduced_branching(unsigned branching);

}  // namespace ngs
