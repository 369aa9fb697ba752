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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Closed-form search costs in oracle-call units. Everything here is plain
// arithmetic; the simulated counterparts live in nested.hpp.

namespace ngs {

enum class Strategy {
  kBaseline,
  kDecompositionIdeal,
  kIterative,
  kDisentangled,
  kPermutationBasisPrep,
  kPermutationGroverPrep,
};

inline constexpr Strategy kAllStrategies[] = {
    Strategy::kBaseline,     Strategy::kDecompositionIdeal,   Strategy::kIterative,
    Strategy::kDisentangled, Strategy::kPermutationBasisPrep, Strategy::kPermutationGroverPrep,
};

std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct CostTerm {
  std::string label;
  double value = 0.0;
};

/// holds <=> margin > 0.
struct ValidityReport {
  std::string constraint;
  bool holds = false;
  double margin = 0.0;
};

struct CostBreakdown {
  Strategy strategy = Strategy::kBaseline;
  unsigned m = 0;
  double g = 0.0;
  unsigned v = 1;
  double total = 0.0;
  std::vector<CostTerm> terms;
  std::vector<ValidityReport> validity;

  bool valid() const;
};

/// sqrt(2^m / k).
double baseline_cost(unsigned m, double k = 1.0);

struct DecompositionCost {
  double sum = 0.0;      // sqrt(2^g) + sqrt(2^(m-g))
  double product = 0.0;  // sqrt(2^m)
  bool saves = false;    // (sqrt(2^g) - 1)(sqrt(2^(m-g)) - 1) > 1
  double margin = 0.0;   // left side of the above minus 1
};
DecompositionCost decomposition_cost(unsigned m, unsigned g);

struct SplitReport {
  double g = 0.0;                    // m / 2
  std::vector<unsigned> minimizers;  // integer g in [1, m) minimizing the sum
  bool certified = false;            // minimizers are floor(m/2) / ceil(m/2)
};
SplitReport optimal_split(unsigned m);

/// v * (2 * 2^(m/4) + 1).
double iterative_cost(unsigned m, unsigned v);

struct VMax {
  double exact = 0.0;   // 2^(m/2) / (2 * 2^(m/4) + 1)
  double approx = 0.0;  // 2^(m/4)
};
VMax v_max(unsigned m);
ValidityReport v_constraint(unsigned m, unsigned v);

/// sqrt(2^(m/2)) * (1/sqrt(v) + 1 + v).
double disentangled_cost(unsigned m, unsigned v);

/// Iterative cost over disentangled cost.
double times_ratio(unsigned m, unsigned v);

enum class PrepMode { kBasis, kGrover };

/// Basis preparation: v + sqrt(2^(m/2)) sqrt(v).
/// Grover preparation: sqrt(2^(m/2)) (1/sqrt(v) + sqrt(v)).
double permutation_cost(unsigned m, unsigned v, PrepMode prep);

/// Labeled terms, total and validity flags for one strategy. `g` is only read
/// by the decomposition strategy; the others use the m/2 split.
CostBreakdown cost_breakdown(Strategy strategy, unsigned m, unsigned v,
                             std::optional<unsigned> g = std::nullopt);

}  // namespace ngs
