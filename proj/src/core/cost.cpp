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

#include "core/cost.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace ngs {

namespace {

double sqrt_pow2(double exponent) { return std::pow(2.0, exponent / 2.0); }

void require_v(unsigned v) {
  if (v < 1) throw DomainError("candidate count v must be >= 1");
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kBaseline: return "baseline";
    case Strategy::kDecompositionIdeal: return "decomposition-ideal";
    case Strategy::kIterative: return "iterative";
    case Strategy::kDisentangled: return "disentangled";
    case Strategy::kPermutationBasisPrep: return "permutation-basis-prep";
    case Strategy::kPermutationGroverPrep: return "permutation-grover-prep";
  }
  return "unknown";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

bool CostBreakdown::valid() const {
  return std::all_of(validity.begin(), validity.end(), [](const auto& r) { return r.holds; });
}

double baseline_cost(unsigned m, double k) {
  if (!(k >= 1.0)) throw DomainError("marked count k must be >= 1");
  return std::sqrt(std::pow(2.0, m) / k);
}

DecompositionCost decomposition_cost(unsigned m, unsigned g) {
  if (g < 1 || g >= m) throw DomainError("split must satisfy 1 <= g < m");
  const double a = sqrt_pow2(g);
  const double b = sqrt_pow2(m - g);
  DecompositionCost c;
  c.sum = a + b;
  c.product = sqrt_pow2(m);
  c.margin = (a - 1.0) * (b - 1.0) - 1.0;
  c.saves = c.margin > 0.0;
  return c;
}

SplitReport optimal_split(unsigned m) {
  if (m < 2) throw DomainError("optimal split needs m >= 2");
  SplitReport r;
  r.g = m / 2.0;
  double best = 0.0;
  for (unsigned g = 1; g < m; ++g) {
    const double s = decomposition_cost(m, g).sum;
    if (r.minimizers.empty() || s < best - 1e-12) {
      best = s;
      r.minimizers = {g};
    } else if (std::abs(s - best) <= 1e-12) {
      r.minimizers.push_back(g);
    }
  }
  const unsigned lo = m / 2;
  const unsigned hi = (m + 1) / 2;
  r.certified = std::all_of(r.minimizers.begin(), r.minimizers.end(),
                            [&](unsigned g) { return g == lo || g == hi; });
  return r;
}

double iterative_cost(unsigned m, unsigned v) {
  require_v(v);
  return v * (2.0 * std::pow(2.0, m / 4.0) + 1.0);
}

VMax v_max(unsigned m) {
  if (m < 1) throw DomainError("depth m must be >= 1");
  const double quarter = std::pow(2.0, m / 4.0);
  return VMax{sqrt_pow2(m) / (2.0 * quarter + 1.0), quarter};
}

ValidityReport v_constraint(unsigned m, unsigned v) {
  const double margin = v_max(m).exact - v;
  return ValidityReport{"v_max", margin > 0.0, margin};
}

double disentangled_cost(unsigned m, unsigned v) {
  require_v(v);
  const double s = sqrt_pow2(m / 2.0);
  return s * (1.0 / std::sqrt(static_cast<double>(v)) + 1.0 + v);
}

double times_ratio(unsigned m, unsigned v) {
  require_v(v);
  const double s = sqrt_pow2(m / 2.0);
  return v * (2.0 * s + 1.0) / disentangled_cost(m, v);
}

double permutation_cost(unsigned m, unsigned v, PrepMode prep) {
  require_v(v);
  const double s = sqrt_pow2(m / 2.0);
  const double root_v = std::sqrt(static_cast<double>(v));
  return prep == PrepMode::kBasis ? v + s * root_v : s * (1.0 / root_v + root_v);
}

CostBreakdown cost_breakdown(Strategy strategy, unsigned m, unsigned v,
                             std::optional<unsigned> g) {
  require_v(v);
  CostBreakdown b;
  b.strategy = strategy;
  b.m = m;
  b.v = v;
  b.g = m / 2.0;
  const double s = sqrt_pow2(m / 2.0);
  const double root_v = std::sqrt(static_cast<double>(v));
  switch (strategy) {
    case Strategy::kBaseline:
      b.v = 1;
      b.terms = {{"grover", baseline_cost(m)}};
      break;
    case Strategy::kDecompositionIdeal: {
      const unsigned split = g.value_or(m / 2);
      const auto c = decomposition_cost(m, split);
      b.g = split;
      b.v = 1;
      b.terms = {{"lower", sqrt_pow2(split)}, {"upper", sqrt_pow2(m - split)}};
      b.validity = {{"decomposition_saves", c.saves, c.margin}};
      break;
    }
    case Strategy::kIterative: {
      const double quarter = std::pow(2.0, m / 4.0);
      b.terms = {{"lower", v * quarter}, {"upper", v * quarter}, {"verify", double(v)}};
      b.validity = {v_constraint(m, v)};
      break;
    }
    case Strategy::kDisentangled: {
      const double dominance = v - (1.0 / root_v + 1.0);
      b.terms = {{"lower_prep", s / root_v}, {"lower_recover", s}, {"upper_blocks", v * s}};
      b.validity = {v_constraint(m, v), {"cheaper_than_iterative", dominance > 0.0, dominance}};
      break;
    }
    case Strategy::kPermutationBasisPrep:
    case Strategy::kPermutationGroverPrep: {
      const bool basis = strategy == Strategy::kPermutationBasisPrep;
      const double fits = m / 2.0 - std::log2(static_cast<double>(v));
      b.terms = {{"prep", basis ? double(v) : s / root_v}, {"grover", s * root_v}};
      b.validity = {{"fits_lower_subspace", fits > 0.0, fits}};
      break;
    }
  }
  b.total = 0.0;
  for (const auto& t : b.terms) b.total += t.value;
  return b;
}

}  // namespace ngs
