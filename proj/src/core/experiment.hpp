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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/cost.hpp"
#include "core/nested.hpp"

// Config-driven runs: parsing, execution of one strategy, rendering.

namespace ngs {

enum class StrategyKind { kEntangled, kProduct, kIterative, kDisentangled, kPermutation };
enum class OutputFormat { kJson, kCsv, kText };

std::string_view to_string(StrategyKind s);
std::string_view to_string(OutputFormat f);
std::optional<OutputFormat> parse_format(std::string_view name);

inline constexpr std::string_view kRunSchema = "nested-grover-run/1";
inline constexpr std::string_view kVerifySchema = "nested-grover-verify/1";
inline constexpr std::string_view kCostSchema = "nested-grover-cost/1";

/// A named subset of the register across which purity is reported.
struct Cut {
  std::string label;
  QubitSet qubits;
};

struct ExperimentConfig {
  std::string name;
  std::string source;  // file path or "<string>"
  StrategyKind strategy = StrategyKind::kEntangled;
  unsigned m = 0;
  unsigned g = 0;
  std::vector<int> global_oracle;
  std::optional<std::vector<int>> upper_oracle;  // global variable numbering
  std::vector<std::uint64_t> candidates;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::kJson;
  PermutationConvention convention = PermutationConvention::kLittleEndian;
  PrepMode prep = PrepMode::kGrover;
  std::vector<std::string> cuts{"lower"};
  // Test hook: added to one entry of the first dense step matrix in verify.
  double corrupt_dense = 0.0;

  SearchProblem problem() const;
  /// Qubits of the simulated register (larger than m for disentangled runs).
  unsigned register_qubits() const;
  std::vector<Cut> resolve_cuts() const;
};

/// Parses the flat key/value document. Errors are ConfigError with the
/// source, line and field in the message.
ExperimentConfig parse_config(std::string_view text, std::string source = "<string>");
ExperimentConfig load_config(const std::filesystem::path& path);
/// JSON export of a parsed config.
std::string config_to_json(const ExperimentConfig& config);

struct HistogramEntry {
  std::uint64_t index = 0;
  std::uint64_t count = 0;
  double probability = 0.0;  // exact, from the final state
};

struct PurityReport {
  Cut cut;
  double purity = 0.0;
  bool product = false;
};

struct RunArtifact {
  ExperimentConfig config;
  unsigned register_qubits = 0;
  std::vector<HistogramEntry> histogram;  // every index with count > 0 or probability > 0
  std::uint64_t shots = 0;
  std::vector<PurityReport> purity;
  SearchResult result;
  std::optional<double> target_probability;  // exact P(xi); unset when xi is not a register string
  CostBreakdown cost;
  std::string details_json;  // strategy-specific records, ordered JSON object
  double wall_time_ms = 0.0;

  /// 0 on a verified solution or a completed state preparation, 2 when the
  /// search exhausted its candidates unverified.
  int exit_code() const;
};

RunArtifact run_experiment(const ExperimentConfig& config);

/// Wall time appears in text output, and in JSON only on request, so that
/// machine-readable output depends only on the config and seed.
std::string render_run(const RunArtifact& artifact, OutputFormat format,
                       bool include_timing = false);

// Dense-versus-kernel cross-check ------------------------------------------

inline constexpr unsigned kMaxVerifyProblemQubits = 8;
inline constexpr double kVerifyTolerance = 1e-10;

struct VerifyCheck {
  std::string label;
  unsigned qubits = 0;
  std::size_t steps = 0;
  double max_deviation = 0.0;
  double unitarity_defect = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::string name;
  std::vector<VerifyCheck> checks;
  double max_deviation = 0.0;
  bool passed = false;
};

VerifyReport verify_experiment(const ExperimentConfig& config);
std::string render_verify(const VerifyReport& report, OutputFormat format);

// Cost tables ----------------------------------------------------------------

/// "a..b", "a,b,c" or a single integer.
std::vector<unsigned> parse_range(std::string_view text);

struct CostRow {
  CostBreakdown breakdown;
  double baseline = 0.0;
  std::optional<double> times_ratio;  // disentangled rows only
};

std::vector<CostRow> cost_table(const std::vector<unsigned>& ms, const std::vector<unsigned>& vs,
                                const std::vector<Strategy>& strategies);
std::string render_cost_table(const std::vector<CostRow>& rows, OutputFormat format);

}  // namespace ngs
