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

#include "core/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "core/errors.hpp"

namespace ngs {

BasisLabel concat(const BasisLabel& upper, const BasisLabel& lower) {
  const unsigned width = upper.width + lower.width;
  if (width > 64) throw ConfigError("concatenation longer than 64 bits");
  const std::uint64_t shifted = lower.width == 64 ? 0 : (upper.value << lower.width);
  return BasisLabel{shifted | lower.value, width};
}

std::pair<BasisLabel, BasisLabel> split(const BasisLabel& x, unsigned g) {
  if (g >= x.width) {
    throw ConfigError("split point " + std::to_string(g) + " must be below width " +
                      std::to_string(x.width));
  }
  const std::uint64_t low_mask = (std::uint64_t{1} << g) - 1;
  return {BasisLabel{x.value >> g, x.width - g}, BasisLabel{x.value & low_mask, g}};
}

// ---------------------------------------------------------------------------

ConjunctionOracle::ConjunctionOracle(unsigned width, std::vector<Literal> literals)
    : width_(width), literals_(std::move(literals)) {
  if (width_ < 1 || width_ > kMaxQubits) {
    throw ConfigError("oracle width " + std::to_string(width_) + " outside [1, " +
                      std::to_string(kMaxQubits) + "]");
  }
  for (const auto& lit : literals_) {
    if (lit.position >= width_) {
      throw ConfigError("literal position " + std::to_string(lit.position) +
                        " outside oracle width " + std::to_string(width_));
    }
    const std::uint64_t bit = std::uint64_t{1} << lit.position;
    if (care_mask_ & bit) {
      throw ConfigError("literal on position " + std::to_string(lit.position) + " repeated");
    }
    care_mask_ |= bit;
    if (lit.positive) care_value_ |= bit;
  }
}

ConjunctionOracle ConjunctionOracle::from_signed(unsigned width, std::span<const int> variables,
                                                 unsigned offset) {
  std::vector<Literal> lits;
  for (int v : variables) {
    const int mag = std::abs(v);
    if (v == 0 || mag <= static_cast<int>(offset) ||
        mag > static_cast<int>(offset + width)) {
      throw ConfigError("variable " + std::to_string(v) + " outside x" +
                        std::to_string(offset + 1) + "..x" + std::to_string(offset + width));
    }
    lits.push_back(Literal{static_cast<unsigned>(mag) - 1 - offset, v > 0});
  }
  return ConjunctionOracle(width, std::move(lits));
}

ConjunctionOracle ConjunctionOracle::exact(const BasisLabel& target) {
  std::vector<Literal> lits;
  for (unsigned q = target.width; q-- > 0;) lits.push_back(Literal{q, target.bit(q)});
  return ConjunctionOracle(target.width, std::move(lits));
}

bool ConjunctionOracle::eval(std::uint64_t bits) const {
  return (bits & care_mask_) == care_value_;
}

bool ConjunctionOracle::eval(const BasisLabel& bits) const {
  if (bits.width != width_) {
    throw ConfigError("oracle of width " + std::to_string(width_) + " given " +
                      std::to_string(bits.width) + " bits");
  }
  return eval(bits.value);
}

std::uint64_t ConjunctionOracle::marked_count() const {
  return std::uint64_t{1} << (width_ - literals_.size());
}

std::vector<std::uint64_t> ConjunctionOracle::marked() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << width_); ++x) {
    if (eval(x)) out.push_back(x);
  }
  return out;
}

std::optional<BasisLabel> ConjunctionOracle::unique_target() const {
  if (literals_.size() != width_) return std::nullopt;
  return BasisLabel{care_value_, width_};
}

std::vector<int> ConjunctionOracle::to_signed(unsigned offset) const {
  std::vector<int> out;
  for (const auto& lit : literals_) {
    const int var = static_cast<int>(lit.position + 1 + offset);
    out.push_back(lit.positive ? var : -var);
  }
  return out;
}

std::string ConjunctionOracle::to_string(unsigned offset) const {
  if (literals_.empty()) return "true";
  std::ostringstream os;
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i) os << " & ";
    if (!literals_[i].positive) os << '~';
    os << 'x' << literals_[i].position + 1 + offset;
  }
  return os.str();
}

BitPredicate ConjunctionOracle::predicate() const {
  return [mask = care_mask_, value = care_value_](std::uint64_t bits) {
    return (bits & mask) == value;
  };
}

// ---------------------------------------------------------------------------

ConcatenatedOracle::ConcatenatedOracle(ConjunctionOracle upper, ConjunctionOracle lower)
    : upper_(std::move(upper)), lower_(std::move(lower)) {
  if (width() > kMaxQubits) throw ConfigError("concatenated oracle too wide");
}

ConcatenatedOracle ConcatenatedOracle::from_signed(unsigned m, unsigned g,
                                                   std::span<const int> variables) {
  if (g < 1 || g >= m) {
    throw ConfigError("split g=" + std::to_string(g) + " must satisfy 1 <= g < m=" +
                      std::to_string(m));
  }
  std::vector<int> upper;
  std::vector<int> lower;
  for (int v : variables) {
    const int mag = std::abs(v);
    if (v == 0 || mag > static_cast<int>(m)) {
      throw ConfigError("variable " + std::to_string(v) + " outside x1..x" + std::to_string(m));
    }
    (mag > static_cast<int>(g) ? upper : lower).push_back(v);
  }
  return ConcatenatedOracle(ConjunctionOracle::from_signed(m - g, upper, g),
                            ConjunctionOracle::from_signed(g, lower, 0));
}

bool ConcatenatedOracle::eval(std::uint64_t bits) const {
  const unsigned g = split_point();
  return upper_.eval(bits >> g) && lower_.eval(bits & ((std::uint64_t{1} << g) - 1));
}

bool ConcatenatedOracle::eval(const BasisLabel& bits) const {
  if (bits.width != width()) {
    throw ConfigError("oracle of width " + std::to_string(width()) + " given " +
                      std::to_string(bits.width) + " bits");
  }
  const auto [z, y] = split(bits, split_point());
  return upper_.eval(z) && lower_.eval(y);
}

std::optional<BasisLabel> ConcatenatedOracle::target() const {
  auto u = upper_.unique_target();
  auto l = lower_.unique_target();
  if (!u || !l) return std::nullopt;
  return concat(*u, *l);
}

std::vector<int> ConcatenatedOracle::to_signed() const {
  auto out = upper_.to_signed(split_point());
  const auto low = lower_.to_signed(0);
  out.insert(out.end(), low.begin(), low.end());
  return out;
}

BitPredicate ConcatenatedOracle::predicate() const {
  return [oracle = *this](std::uint64_t bits) { return oracle.eval(bits); };
}

// ---------------------------------------------------------------------------

PartialCandidateSet::PartialCandidateSet(unsigned width, std::vector<std::uint64_t> candidates)
    : width_(width), candidates_(std::move(candidates)) {
  if (width_ < 1 || width_ > kMaxQubits) throw ConfigError("candidate width out of range");
  if (candidates_.empty()) throw ConfigError("candidate set must not be empty");
  for (std::size_t i = 0; i < candidates_.size(); ++i) {
    if (candidates_[i] >> width_) {
      throw ConfigError("candidate " + std::to_string(candidates_[i]) + " exceeds " +
                        std::to_string(width_) + " bits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (candidates_[i] == candidates_[j]) {
        throw ValidationError("duplicate candidate " + to_bitstring(candidates_[i], width_));
      }
    }
  }
}

PartialCandidateSet PartialCandidateSet::from_labels(const std::vector<BasisLabel>& labels) {
  if (labels.empty()) throw ConfigError("candidate set must not be empty");
  std::vector<std::uint64_t> values;
  for (const auto& l : labels) {
    if (l.width != labels.front().width) throw ConfigError("candidates differ in width");
    values.push_back(l.value);
  }
  return PartialCandidateSet(labels.front().width, std::move(values));
}

BasisLabel PartialCandidateSet::candidate(std::size_t k) const {
  if (k < 1 || k > candidates_.size()) {
    throw ConfigError("candidate index " + std::to_string(k) + " outside [1, " +
                      std::to_string(candidates_.size()) + "]");
  }
  return BasisLabel{candidates_[k - 1], width_};
}

ConjunctionOracle PartialCandidateSet::candidate_oracle(std::size_t k) const {
  return ConjunctionOracle::exact(candidate(k));
}

bool PartialCandidateSet::contains(std::uint64_t y) const { return index_of(y).has_value(); }

std::optional<std::size_t> PartialCandidateSet::index_of(std::uint64_t y) const {
  auto it = std::find(candidates_.begin(), candidates_.end(), y);
  if (it == candidates_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - candidates_.begin()) + 1;
}

BitPredicate PartialCandidateSet::marks_any() const {
  return [values = candidates_](std::uint64_t y) {
    return std::find(values.begin(), values.end(), y) != values.end();
  };
}

FlaggedUpperOracle::FlaggedUpperOracle(BasisLabel upper_target, std::size_t flag_index,
                                       const PartialCandidateSet& candidates)
    : upper_target_(upper_target), flag_index_(flag_index) {
  if (flag_index_ < 1 || flag_index_ > candidates.size()) {
    throw ConfigError("flag index " + std::to_string(flag_index_) + " outside [1, " +
                      std::to_string(candidates.size()) + "]");
  }
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kMaxLeaves = std::uint64_t{1} << 20;

std::uint64_t leaf_count(unsigned branching, unsigned depth) {
  if (branching < 2) throw ConfigError("branching factor must be >= 2");
  std::uint64_t n = 1;
  for (unsigned i = 0; i < depth; ++i) {
    n *= branching;
    if (n > kMaxLeaves) throw ConfigError("tree has more than 2^20 leaves");
  }
  return n;
}

unsigned bits_for(std::uint64_t count) {
  unsigned w = 0;
  while ((std::uint64_t{1} << w) < count) ++w;
  return w;
}

}  // namespace

BasisLabel path_encode(const PathDescriptor& path) {
  const auto depth = static_cast<unsigned>(path.digits.size());
  const std::uint64_t leaves = leaf_count(path.branching, depth);
  std::uint64_t value = 0;
  for (unsigned d : path.digits) {
    if (d >= path.branching) {
      throw ConfigError("digit " + std::to_string(d) + " not below branching " +
                        std::to_string(path.branching));
    }
    value = value * path.branching + d;
  }
  return BasisLabel{value, bits_for(leaves)};
}

PathDescriptor path_decode(std::uint64_t value, unsigned branching, unsigned depth) {
  const std::uint64_t leaves = leaf_count(branching, depth);
  if (value >= leaves) throw ConfigError("path value outside [0, B^depth)");
  PathDescriptor path{branching, std::vector<unsigned>(depth)};
  for (unsigned i = depth; i-- > 0;) {
    path.digits[i] = static_cast<unsigned>(value % branching);
    value /= branching;
  }
  return path;
}

double reduced_branching(unsigned branching) {
  if (branching < 2) throw DomainError("branching factor must be >= 2");
  return std::sqrt(static_cast<double>(branching));
}

}  // namespace ngs
