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

#include "core/experiment.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "core/errors.hpp"

namespace ngs {

using ojson = nlohmann::ordered_json;

std::string_view to_string(StrategyKind s) {
  switch (s) {
    case StrategyKind::kEntangled: return "entangled";
    case StrategyKind::kProduct: return "product";
    case StrategyKind::kIterative: return "iterative";
    case StrategyKind::kDisentangled: return "disentangled";
    case StrategyKind::kPermutation: return "permutation";
  }
  return "?";
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::kJson: return "json";
    case OutputFormat::kCsv: return "csv";
    case OutputFormat::kText: return "text";
  }
  return "?";
}

std::optional<OutputFormat> parse_format(std::string_view name) {
  for (auto f : {OutputFormat::kJson, OutputFormat::kCsv, OutputFormat::kText}) {
    if (to_string(f) == name) return f;
  }
  return std::nullopt;
}

namespace {

std::optional<StrategyKind> parse_strategy_kind(std::string_view name) {
  for (auto s : {StrategyKind::kEntangled, StrategyKind::kProduct, StrategyKind::kIterative,
                 StrategyKind::kDisentangled, StrategyKind::kPermutation}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string_view to_string(PermutationConvention c) {
  return c == PermutationConvention::kStandard ? "standard" : "little-endian";
}

std::string_view to_string(PrepMode p) { return p == PrepMode::kBasis ? "basis" : "grover"; }

// ---------------------------------------------------------------------------
// Config parsing

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& node, std::string_view field,
                         const std::string& message) const {
    const auto mark = node.Mark();
    std::string where = source_;
    if (!mark.is_null()) where += ":" + std::to_string(mark.line + 1);
    throw ConfigError(where + ": field '" + std::string(field) + "': " + message);
  }

  std::string scalar(const YAML::Node& node, std::string_view field) const {
    if (!node.IsScalar()) fail(node, field, "expected a scalar");
    return node.Scalar();
  }

  std::int64_t integer(const YAML::Node& node, std::string_view field) const {
    const std::string text = scalar(node, field);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(node, field, "expected an integer, got '" + text + "'");
    }
    return value;
  }

  std::uint64_t unsigned_integer(const YAML::Node& node, std::string_view field) const {
    const std::string text = scalar(node, field);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || text[0] == '-' || ec != std::errc() || ptr != text.data() + text.size()) {
      fail(node, field, "expected a non-negative integer, got '" + text + "'");
    }
    return value;
  }

  double real(const YAML::Node& node, std::string_view field) const {
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a number");
    }
  }

  std::vector<int> literals(const YAML::Node& node, std::string_view field) const {
    if (!node.IsSequence() || node.size() == 0) fail(node, field, "expected a non-empty list");
    std::vector<int> out;
    for (const auto& item : node) {
      const auto x = integer(item, field);
      if (x == 0 || x > 64 || x < -64) fail(item, field, "literal out of range");
      out.push_back(static_cast<int>(x));
    }
    return out;
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

const std::set<std::string, std::less<>> kKnownKeys = {
    "name",   "strategy", "m",    "g",           "v",           "global_oracle", "upper_oracle",
    "candidates", "shots", "seed", "format", "permutation", "cuts", "corrupt_dense"};

}  // namespace

SearchProblem ExperimentConfig::problem() const {
  auto global = ConcatenatedOracle::from_signed(m, g, global_oracle);
  std::optional<ConjunctionOracle> upper;
  if (upper_oracle) upper = ConjunctionOracle::from_signed(m - g, *upper_oracle, g);
  return SearchProblem(std::move(global), PartialCandidateSet(g, candidates), std::move(upper));
}

unsigned ExperimentConfig::register_qubits() const {
  if (strategy == StrategyKind::kDisentangled) {
    return g + static_cast<unsigned>(candidates.size()) * (m - g + 1);
  }
  return m;
}

std::vector<Cut> ExperimentConfig::resolve_cuts() const {
  const unsigned n = register_qubits();
  std::vector<Cut> out;
  for (const auto& spec : cuts) {
    if (spec == "lower") {
      out.push_back({spec, QubitSet::range(0, g)});
    } else if (spec == "upper") {
      out.push_back({spec, QubitSet::range(0, g).complement(n)});
    } else {
      std::vector<unsigned> qubits;
      std::stringstream ss(spec);
      std::string item;
      while (std::getline(ss, item, ' ')) {
        if (item.empty()) continue;
        unsigned q = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), q);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
          throw ConfigError("cut '" + spec + "' is not a qubit list");
        }
        qubits.push_back(q);
      }
      std::sort(qubits.begin(), qubits.end());
      QubitSet set(std::move(qubits));
      set.check_within(n);
      out.push_back({spec, std::move(set)});
    }
  }
  return out;
}

ExperimentConfig parse_config(std::string_view text, std::string source) {
  Reader rd(source);
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root.IsMap()) throw ConfigError(source + ": expected a key/value document");

  ExperimentConfig cfg;
  cfg.source = source;
  std::set<std::string, std::less<>> seen;
  for (const auto& kv : root) {
    const std::string key = kv.first.Scalar();
    if (!kKnownKeys.count(key)) rd.fail(kv.first, key, "unknown key");
    // yaml-cpp keeps duplicate keys and lookups return the first one.
    if (!seen.insert(key).second) rd.fail(kv.first, key, "duplicate key");
  }
  for (const char* required : {"strategy", "m", "g", "global_oracle", "candidates"}) {
    if (!root[required]) throw ConfigError(source + ": missing required field '" + required + "'");
  }

  cfg.name = root["name"] ? rd.scalar(root["name"], "name") : std::string("unnamed");
  const auto strategy_node = root["strategy"];
  const auto strategy = parse_strategy_kind(rd.scalar(strategy_node, "strategy"));
  if (!strategy) {
    rd.fail(strategy_node, "strategy",
            "expected entangled, product, iterative, disentangled or permutation");
  }
  cfg.strategy = *strategy;

  const auto m = rd.integer(root["m"], "m");
  if (m < 2 || m > kMaxQubits) {
    rd.fail(root["m"], "m", "must lie in [2, " + std::to_string(kMaxQubits) + "]");
  }
  cfg.m = static_cast<unsigned>(m);
  const auto g = rd.integer(root["g"], "g");
  if (g < 1 || g >= m) rd.fail(root["g"], "g", "must satisfy 1 <= g < m");
  cfg.g = static_cast<unsigned>(g);

  cfg.global_oracle = rd.literals(root["global_oracle"], "global_oracle");
  for (std::size_t i = 0; i < cfg.global_oracle.size(); ++i) {
    if (std::abs(cfg.global_oracle[i]) > m) {
      rd.fail(root["global_oracle"][i], "global_oracle", "variable beyond x" + std::to_string(m));
    }
  }
  if (root["upper_oracle"]) {
    cfg.upper_oracle = rd.literals(root["upper_oracle"], "upper_oracle");
    for (std::size_t i = 0; i < cfg.upper_oracle->size(); ++i) {
      const int x = std::abs((*cfg.upper_oracle)[i]);
      if (x <= g || x > m) {
        rd.fail(root["upper_oracle"][i], "upper_oracle",
                "upper variables are x" + std::to_string(g + 1) + "..x" + std::to_string(m));
      }
    }
  }

  const auto cands = root["candidates"];
  if (!cands.IsSequence() || cands.size() == 0) {
    rd.fail(cands, "candidates", "expected a non-empty list");
  }
  for (const auto& item : cands) {
    if (item.IsScalar()) {
      BasisLabel label;
      try {
        label = BasisLabel::parse(item.Scalar());
      } catch (const Error& e) {
        rd.fail(item, "candidates", e.what());
      }
      if (label.width != cfg.g) {
        rd.fail(item, "candidates", "'" + item.Scalar() + "' is not " + std::to_string(g) +
                                        " bits wide");
      }
      cfg.candidates.push_back(label.value);
    } else {
      const auto vars = rd.literals(item, "candidates");
      std::optional<BasisLabel> target;
      try {
        target = ConjunctionOracle::from_signed(cfg.g, vars).unique_target();
      } catch (const Error& e) {
        rd.fail(item, "candidates", e.what());
      }
      if (!target) rd.fail(item, "candidates", "literal list must fix every lower variable");
      cfg.candidates.push_back(target->value);
    }
  }
  if (root["v"]) {
    const auto v = rd.integer(root["v"], "v");
    if (v != static_cast<std::int64_t>(cfg.candidates.size())) {
      rd.fail(root["v"], "v", "does not match the number of candidates");
    }
  }

  if (root["shots"]) {
    const auto shots = rd.integer(root["shots"], "shots");
    if (shots < 1) rd.fail(root["shots"], "shots", "must be >= 1");
    cfg.shots = static_cast<std::uint64_t>(shots);
  }
  if (root["seed"]) cfg.seed = rd.unsigned_integer(root["seed"], "seed");
  if (root["format"]) {
    const auto f = parse_format(rd.scalar(root["format"], "format"));
    if (!f) rd.fail(root["format"], "format", "expected json, csv or text");
    cfg.format = *f;
  }
  if (const auto perm = root["permutation"]) {
    if (!perm.IsMap()) rd.fail(perm, "permutation", "expected convention/prep keys");
    std::set<std::string, std::less<>> perm_seen;
    for (const auto& kv : perm) {
      const std::string key = kv.first.Scalar();
      if (!perm_seen.insert(key).second) rd.fail(kv.first, "permutation." + key, "duplicate key");
      const std::string value = rd.scalar(kv.second, "permutation." + key);
      if (key == "convention") {
        if (value == "standard") {
          cfg.convention = PermutationConvention::kStandard;
        } else if (value == "little-endian") {
          cfg.convention = PermutationConvention::kLittleEndian;
        } else {
          rd.fail(kv.second, "permutation.convention", "expected standard or little-endian");
        }
      } else if (key == "prep") {
        if (value == "grover") {
          cfg.prep = PrepMode::kGrover;
        } else if (value == "basis") {
          cfg.prep = PrepMode::kBasis;
        } else {
          rd.fail(kv.second, "permutation.prep", "expected grover or basis");
        }
      } else {
        rd.fail(kv.first, "permutation." + key, "unknown key");
      }
    }
  }
  if (const auto cuts = root["cuts"]) {
    if (!cuts.IsSequence()) rd.fail(cuts, "cuts", "expected a list");
    cfg.cuts.clear();
    for (const auto& item : cuts) {
      if (item.IsScalar()) {
        cfg.cuts.push_back(item.Scalar());
      } else if (item.IsSequence()) {
        std::string joined;
        for (const auto& q : item) {
          if (!joined.empty()) joined += ' ';
          joined += std::to_string(rd.unsigned_integer(q, "cuts"));
        }
        cfg.cuts.push_back(joined);
      } else {
        rd.fail(item, "cuts", "expected lower, upper or a list of qubits");
      }
    }
  }
  if (root["corrupt_dense"]) cfg.corrupt_dense = rd.real(root["corrupt_dense"], "corrupt_dense");

  // Cross-field checks run through the library types.
  try {
    const auto problem = cfg.problem();
    if (cfg.register_qubits() > kMaxQubits) {
      throw ConfigError("register needs " + std::to_string(cfg.register_qubits()) +
                        " qubits, cap is " + std::to_string(kMaxQubits));
    }
    cfg.resolve_cuts();
  } catch (const Error& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

namespace {

ojson config_json(const ExperimentConfig& c) {
  ojson j;
  j["name"] = c.name;
  j["strategy"] = to_string(c.strategy);
  j["m"] = c.m;
  j["g"] = c.g;
  j["v"] = c.candidates.size();
  j["global_oracle"] = c.global_oracle;
  j["upper_oracle"] = c.upper_oracle ? ojson(*c.upper_oracle) : ojson(nullptr);
  ojson cands = ojson::array();
  for (auto x : c.candidates) cands.push_back(to_bitstring(x, c.g));
  j["candidates"] = cands;
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  if (c.strategy == StrategyKind::kPermutation) {
    j["permutation"] = {{"convention", to_string(c.convention)}, {"prep", to_string(c.prep)}};
  }
  j["cuts"] = c.cuts;
  return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) { return config_json(config).dump(2); }

// ---------------------------------------------------------------------------
// Runs

int RunArtifact::exit_code() const {
  switch (config.strategy) {
    case StrategyKind::kEntangled:
    case StrategyKind::kProduct:
      return 0;
    default:
      return result.verified ? 0 : 2;
  }
}

namespace {

CostBreakdown matching_cost(const ExperimentConfig& c) {
  const auto v = static_cast<unsigned>(c.candidates.size());
  switch (c.strategy) {
    case StrategyKind::kEntangled:
    case StrategyKind::kProduct:
      return cost_breakdown(Strategy::kDecompositionIdeal, c.m, v, c.g);
    case StrategyKind::kIterative:
      return cost_breakdown(Strategy::kIterative, c.m, v);
    case StrategyKind::kDisentangled:
      return cost_breakdown(Strategy::kDisentangled, c.m, v);
    case StrategyKind::kPermutation:
      return cost_breakdown(c.prep == PrepMode::kBasis ? Strategy::kPermutationBasisPrep
                                                       : Strategy::kPermutationGroverPrep,
                            c.m, v);
  }
  return {};
}

ojson queries_json(const QueryCounter& q) {
  return {{"oracle_calls", q.oracle_calls},
          {"diffusion_calls", q.diffusion_calls},
          {"classical_checks", q.classical_checks}};
}

// Modal outcome of a state-preparation run, checked against the global oracle.
SearchResult prepared_result(const SearchProblem& problem, const Histogram& hist,
                             QueryCounter& counter) {
  SearchResult r;
  const BasisLabel top{modal_outcome(hist), problem.m()};
  r.found = top;
  r.candidate_index = problem.candidates().index_of(split(top, problem.g()).second.value);
  ++counter.oracle_calls;
  ++counter.classical_checks;
  r.verified = problem.global_oracle().eval(top);
  r.queries = counter;
  r.trials = 1;
  return r;
}

}  // namespace

RunArtifact run_experiment(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const SearchProblem problem = config.problem();
  RunArtifact art;
  art.config = config;
  art.register_qubits = config.register_qubits();
  art.shots = config.shots;
  art.cost = matching_cost(config);

  QueryCounter counter;
  Statevector state = Statevector::uniform(1);
  Histogram hist;
  ojson details = ojson::object();

  switch (config.strategy) {
    case StrategyKind::kEntangled:
    case StrategyKind::kProduct: {
      state = config.strategy == StrategyKind::kEntangled
                  ? entangled_nested(problem, counter)
                  : product_subspace_search(problem, counter);
      hist = sample(state, config.shots, config.seed);
      art.result = prepared_result(problem, hist, counter);
      details["r_lower"] = iteration_count(std::uint64_t{1} << problem.g(), problem.v()).r;
      details["r_upper"] = iteration_count(std::uint64_t{1} << problem.upper_width(), 1).r;
      break;
    }
    case StrategyKind::kIterative: {
      auto out = iterative_search(problem, config.shots, config.seed, counter);
      art.result = out.result;
      state = std::move(out.final_state);
      hist = std::move(out.final_histogram);
      ojson trials = ojson::array();
      for (const auto& t : out.trials) {
        trials.push_back({{"candidate_index", t.candidate_index},
                          {"candidate", problem.candidates().candidate(t.candidate_index).to_string()},
                          {"top", t.top.to_string()},
                          {"top_count", t.top_count},
                          {"target_probability", t.target_probability},
                          {"verified", t.verified}});
      }
      details["shots_per_trial"] = config.shots;
      details["trials"] = trials;
      break;
    }
    case StrategyKind::kDisentangled: {
      auto out = disentangled_search(problem, counter);
      art.result = out.result;
      state = std::move(out.state);
      hist = sample(state, config.shots, config.seed);
      const DisentangledLayout layout{problem.g(), problem.upper_width(),
                                      static_cast<unsigned>(problem.v())};
      ojson blocks = ojson::array();
      for (const auto& b : out.blocks) {
        blocks.push_back({{"k", b.k},
                          {"flag_qubit", layout.flag_qubit(b.k)},
                          {"block_qubits", layout.block(b.k).indices()},
                          {"branch_probability", b.branch_probability},
                          {"target_in_branch", b.target_in_branch},
                          {"target_marginal", b.target_marginal}});
      }
      details["upper_target"] = problem.upper_target().to_string();
      details["decision_threshold"] = kBlockDecisionThreshold;
      details["blocks"] = blocks;
      details["winning_k"] = out.winning_k ? ojson(*out.winning_k) : ojson(nullptr);
      details["flag_residual"] = out.flag_residual;
      details["recovery_probability"] = out.recovery_probability;
      break;
    }
    case StrategyKind::kPermutation: {
      auto out = permutation_search(problem, config.convention, config.prep, config.shots,
                                    config.seed, counter);
      art.result = out.result;
      art.target_probability = out.target_probability;
      state = std::move(out.state);
      hist = std::move(out.histogram);
      const auto circuit = cnot_permutation_circuit(out.spec);
      const auto check = check_cnot_circuit(out.spec, circuit);
      ojson mapping = ojson::object();
      for (std::uint64_t x = 0; x < out.spec.mapping.size(); ++x) {
        mapping[to_bitstring(x, out.spec.width)] = to_bitstring(out.spec.mapping[x], out.spec.width);
      }
      ojson codes = ojson::array();
      for (auto c : out.spec.codes) codes.push_back(to_bitstring(c, out.spec.width));
      details["convention"] = to_string(config.convention);
      details["prep"] = to_string(config.prep);
      details["mapping"] = mapping;
      details["codes"] = codes;
      details["index_qubits"] = out.spec.index_qubit_set().indices();
      details["cnot_circuit"] = {{"flag_qubits", circuit.flag_qubits},
                                 {"gates", circuit.gates.size()},
                                 {"agrees", check.agrees},
                                 {"max_deviation", check.max_deviation}};
      break;
    }
  }
  if (config.strategy != StrategyKind::kDisentangled && !art.target_probability) {
    art.target_probability = std::norm(state[problem.xi().value]);
  }

  for (std::uint64_t i = 0; i < state.dimension(); ++i) {
    const double p = std::norm(state[i]);
    const auto it = hist.find(i);
    const std::uint64_t count = it == hist.end() ? 0 : it->second;
    if (p > 0.0 || count > 0) art.histogram.push_back({i, count, p});
  }
  for (const auto& cut : config.resolve_cuts()) {
    const double purity = partition_purity(state, cut.qubits);
    art.purity.push_back({cut, purity, purity >= kProductPurity});
  }
  art.details_json = details.dump();
  art.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return art;
}

namespace {

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(double x) { return fmt::format("{:.17g}", x); }

std::string qubit_list(const QubitSet& q) {
  std::string out;
  for (unsigned i : q) out += (out.empty() ? "" : " ") + std::to_string(i);
  return out;
}

ojson cost_json(const CostBreakdown& b) {
  ojson terms = ojson::object();
  for (const auto& t : b.terms) terms[t.label] = t.value;
  ojson validity = ojson::array();
  for (const auto& v : b.validity) {
    validity.push_back({{"constraint", v.constraint}, {"holds", v.holds}, {"margin", v.margin}});
  }
  return {{"strategy", to_string(b.strategy)}, {"m", b.m}, {"g", b.g},       {"v", b.v},
          {"total", b.total},                  {"terms", terms}, {"validity", validity},
          {"valid", b.valid()}};
}

std::string render_run_json(const RunArtifact& a, bool include_timing) {
  const unsigned n = a.register_qubits;
  ojson j;
  j["schema"] = kRunSchema;
  j["endianness"] = "little";
  j["config"] = config_json(a.config);
  j["register_qubits"] = n;
  j["shots"] = a.shots;
  ojson hist = ojson::array();
  double total = 0.0;
  std::uint64_t counted = 0;
  for (const auto& e : a.histogram) {
    hist.push_back({{"label", to_bitstring(e.index, n)},
                    {"index", e.index},
                    {"count", e.count},
                    {"probability", e.probability}});
    total += e.probability;
    counted += e.count;
  }
  j["histogram"] = hist;
  j["count_sum"] = counted;
  j["probability_sum"] = total;
  ojson purity = ojson::array();
  for (const auto& p : a.purity) {
    purity.push_back({{"cut", p.cut.label},
                      {"qubits", p.cut.qubits.indices()},
                      {"purity", p.purity},
                      {"product", p.product}});
  }
  j["purity"] = purity;
  const auto& r = a.result;
  j["result"] = {{"found", r.found ? ojson(r.found->to_string()) : ojson(nullptr)},
                 {"candidate_index", r.candidate_index ? ojson(*r.candidate_index) : ojson(nullptr)},
                 {"verified", r.verified},
                 {"trials", r.trials},
                 {"queries", queries_json(r.queries)}};
  j["target"] = a.config.problem().xi().to_string();
  j["target_probability"] = a.target_probability ? ojson(*a.target_probability) : ojson(nullptr);
  j["cost"] = cost_json(a.cost);
  j["details"] = ojson::parse(a.details_json);
  j["exit_code"] = a.exit_code();
  if (include_timing) j["wall_time_ms"] = a.wall_time_ms;
  return j.dump(2) + "\n";
}

std::string render_run_csv(const RunArtifact& a) {
  const unsigned n = a.register_qubits;
  std::string out = "# ";
  out += kRunSchema;
  out += "\nsection,key,label,count,probability,value\n";
  auto row = [&out](std::string_view section, std::string_view key, std::string_view label,
                    std::string_view count, std::string_view prob, std::string_view value) {
    out += fmt::format("{},{},{},{},{},{}\n", section, csv_field(key), csv_field(label), count,
                       prob, csv_field(value));
  };
  row("meta", "name", "", "", "", a.config.name);
  row("meta", "strategy", "", "", "", to_string(a.config.strategy));
  row("meta", "endianness", "", "", "", "little");
  row("meta", "m", "", "", "", std::to_string(a.config.m));
  row("meta", "g", "", "", "", std::to_string(a.config.g));
  row("meta", "v", "", "", "", std::to_string(a.config.candidates.size()));
  row("meta", "seed", "", "", "", std::to_string(a.config.seed));
  row("meta", "shots", "", "", "", std::to_string(a.shots));
  row("meta", "register_qubits", "", "", "", std::to_string(n));
  for (const auto& e : a.histogram) {
    row("histogram", std::to_string(e.index), to_bitstring(e.index, n), std::to_string(e.count),
        num(e.probability), "");
  }
  for (const auto& p : a.purity) {
    row("purity", p.cut.label, qubit_list(p.cut.qubits), "", "", num(p.purity));
  }
  const auto& r = a.result;
  row("result", "found", r.found ? r.found->to_string() : "", "", "", "");
  row("result", "candidate_index", "", "", "",
      r.candidate_index ? std::to_string(*r.candidate_index) : "");
  row("result", "verified", "", "", "", r.verified ? "true" : "false");
  row("result", "trials", "", "", "", std::to_string(r.trials));
  row("result", "oracle_calls", "", "", "", std::to_string(r.queries.oracle_calls));
  row("result", "diffusion_calls", "", "", "", std::to_string(r.queries.diffusion_calls));
  row("result", "classical_checks", "", "", "", std::to_string(r.queries.classical_checks));
  row("result", "target_probability", a.config.problem().xi().to_string(), "",
      a.target_probability ? num(*a.target_probability) : "", "");
  row("cost", "strategy", "", "", "", to_string(a.cost.strategy));
  row("cost", "total", "", "", "", num(a.cost.total));
  for (const auto& t : a.cost.terms) row("cost", "term", t.label, "", "", num(t.value));
  for (const auto& v : a.cost.validity) {
    row("cost", v.holds ? "valid" : "invalid", v.constraint, "", "", num(v.margin));
  }
  row("result", "exit_code", "", "", "", std::to_string(a.exit_code()));
  return out;
}

std::string render_run_text(const RunArtifact& a) {
  const unsigned n = a.register_qubits;
  std::string out;
  out += fmt::format("run {} ({}), m={} g={} v={}, seed {}, {} shots\n", a.config.name,
                     to_string(a.config.strategy), a.config.m, a.config.g,
                     a.config.candidates.size(), a.config.seed, a.shots);
  out += fmt::format("bitstrings are MSB-left; qubit q is bit q of the index\n\n");
  out += fmt::format("{:<{}}  {:>8}  {:>12}\n", "outcome", std::max(n, 7u), "count", "probability");
  for (const auto& e : a.histogram) {
    if (e.count == 0 && e.probability < 1e-6) continue;
    out += fmt::format("{:<{}}  {:>8}  {:>12.6f}\n", to_bitstring(e.index, n), std::max(n, 7u),
                       e.count, e.probability);
  }
  out += "\n";
  for (const auto& p : a.purity) {
    out += fmt::format("purity[{}] = {:.9f}{}\n", p.cut.label, p.purity,
                       p.product ? " (product)" : "");
  }
  const auto& r = a.result;
  out += fmt::format("found {} verified {} trials {} oracle calls {}\n",
                     r.found ? r.found->to_string() : "-", r.verified ? "yes" : "no", r.trials,
                     r.queries.oracle_calls);
  if (a.target_probability) {
    out += fmt::format("P({}) = {:.6f}\n", a.config.problem().xi().to_string(),
                       *a.target_probability);
  }
  out += fmt::format("cost[{}] = {:.4f}{}\n", to_string(a.cost.strategy), a.cost.total,
                     a.cost.valid() ? "" : " (constraint violated)");
  out += fmt::format("details {}\n", a.details_json);
  out += fmt::format("wall time {:.3f} ms\n", a.wall_time_ms);
  return out;
}

}  // namespace

std::string render_run(const RunArtifact& artifact, OutputFormat format, bool include_timing) {
  switch (format) {
    case OutputFormat::kJson: return render_run_json(artifact, include_timing);
    case OutputFormat::kCsv: return render_run_csv(artifact);
    case OutputFormat::kText: return render_run_text(artifact);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Verify

namespace {

VerifyCheck compare_paths(std::string label, const Program& program, const Statevector& initial,
                          double corrupt) {
  VerifyCheck check;
  check.label = std::move(label);
  check.qubits = program.num_qubits();
  check.steps = program.steps().size();
  Statevector fast = initial;
  execute(program, fast);
  Statevector dense = initial;
  bool first = true;
  for (const auto& step : program.steps()) {
    DenseMatrix m = step_matrix(step, program.num_qubits());
    if (first && corrupt != 0.0) m(0, 0) += corrupt;
    first = false;
    check.unitarity_defect = std::max(check.unitarity_defect, m.unitarity_defect());
    apply_dense_unchecked(dense, m);
  }
  check.max_deviation = max_abs_deviation(fast, dense);
  check.passed = check.max_deviation <= kVerifyTolerance && check.unitarity_defect <= 1e-9;
  return check;
}

}  // namespace

VerifyReport verify_experiment(const ExperimentConfig& config) {
  if (config.m > kMaxVerifyProblemQubits) {
    throw ConfigError("verify needs m <= " + std::to_string(kMaxVerifyProblemQubits) +
                      " for the dense path, got " + std::to_string(config.m));
  }
  if (config.register_qubits() > kMaxDenseQubits) {
    throw ConfigError("register of " + std::to_string(config.register_qubits()) +
                      " qubits exceeds the dense cap of " + std::to_string(kMaxDenseQubits));
  }
  const SearchProblem problem = config.problem();
  const double eps = config.corrupt_dense;
  VerifyReport report;
  report.name = config.name;
  const auto uniform = Statevector::uniform(problem.m());
  switch (config.strategy) {
    case StrategyKind::kEntangled:
      report.checks.push_back(compare_paths("entangled", entangled_program(problem), uniform, eps));
      break;
    case StrategyKind::kProduct:
      report.checks.push_back(compare_paths("product", product_program(problem), uniform, eps));
      break;
    case StrategyKind::kIterative:
      for (std::size_t k = 1; k <= problem.v(); ++k) {
        report.checks.push_back(compare_paths("trial " + std::to_string(k),
                                              iterative_trial_program(problem, k), uniform,
                                              k == 1 ? eps : 0.0));
      }
      break;
    case StrategyKind::kDisentangled:
      report.checks.push_back(compare_paths("disentangled", disentangled_program(problem),
                                            disentangled_initial_state(problem), eps));
      break;
    case StrategyKind::kPermutation: {
      const auto spec = build_permutation(problem.candidates(), config.convention);
      report.checks.push_back(compare_paths("permutation",
                                            permutation_program(problem, spec, config.prep),
                                            permutation_initial_state(problem, config.prep), eps));
      const auto circuit = cnot_permutation_circuit(spec);
      const auto cc = check_cnot_circuit(spec, circuit);
      VerifyCheck c;
      c.label = "cnot-circuit";
      c.qubits = circuit.num_qubits();
      c.steps = circuit.gates.size();
      c.max_deviation = std::max(cc.max_deviation, cc.flag_residual);
      c.unitarity_defect = spec.matrix().unitarity_defect();
      c.passed = cc.agrees && c.unitarity_defect <= 1e-9;
      report.checks.push_back(c);
      break;
    }
  }
  report.passed = true;
  for (const auto& c : report.checks) {
    report.max_deviation = std::max(report.max_deviation, c.max_deviation);
    report.passed = report.passed && c.passed;
  }
  return report;
}

std::string render_verify(const VerifyReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson: {
      ojson checks = ojson::array();
      for (const auto& c : report.checks) {
        checks.push_back({{"label", c.label},
                          {"qubits", c.qubits},
                          {"steps", c.steps},
                          {"max_deviation", c.max_deviation},
                          {"unitarity_defect", c.unitarity_defect},
                          {"passed", c.passed}});
      }
      ojson j = {{"schema", kVerifySchema},
                 {"name", report.name},
                 {"tolerance", kVerifyTolerance},
                 {"checks", checks},
                 {"max_deviation", report.max_deviation},
                 {"passed", report.passed}};
      return j.dump(2) + "\n";
    }
    case OutputFormat::kCsv: {
      std::string out = "# " + std::string(kVerifySchema) +
                        "\nname,check,qubits,steps,max_deviation,unitarity_defect,passed\n";
      for (const auto& c : report.checks) {
        out += fmt::format("{},{},{},{},{},{},{}\n", csv_field(report.name), csv_field(c.label),
                           c.qubits, c.steps, num(c.max_deviation), num(c.unitarity_defect),
                           c.passed ? "true" : "false");
      }
      return out;
    }
    case OutputFormat::kText: {
      std::string out = fmt::format("verify {} (tolerance {:g})\n", report.name, kVerifyTolerance);
      for (const auto& c : report.checks) {
        out += fmt::format("  {:<16} {:>2} qubits {:>5} steps  deviation {:.3e}  defect {:.3e}  {}\n",
                           c.label, c.qubits, c.steps, c.max_deviation, c.unitarity_defect,
                           c.passed ? "ok" : "FAILED");
      }
      out += report.passed ? "all paths agree\n" : "MISMATCH\n";
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Cost tables

std::vector<unsigned> parse_range(std::string_view text) {
  auto parse_one = [&](std::string_view s) {
    unsigned x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw ConfigError("bad range '" + std::string(text) + "'");
    }
    return x;
  };
  std::vector<unsigned> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const unsigned lo = parse_one(text.substr(0, dots));
    const unsigned hi = parse_one(text.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty range '" + std::string(text) + "'");
    for (unsigned x = lo; x <= hi; ++x) out.push_back(x);
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto comma = std::min(text.find(',', pos), text.size());
      out.push_back(parse_one(text.substr(pos, comma - pos)));
      pos = comma + 1;
    }
  }
  return out;
}

std::vector<CostRow> cost_table(const std::vector<unsigned>& ms, const std::vector<unsigned>& vs,
                                const std::vector<Strategy>& strategies) {
  if (ms.empty() || vs.empty() || strategies.empty()) {
    throw ConfigError("cost table needs non-empty m, v and strategy lists");
  }
  std::vector<CostRow> rows;
  for (unsigned m : ms) {
    if (m < 2 || m > 64) throw ConfigError("m must lie in [2, 64]");
    for (unsigned v : vs) {
      for (Strategy s : strategies) {
        CostRow row;
        row.breakdown = cost_breakdown(s, m, v);
        row.baseline = baseline_cost(m);
        if (s == Strategy::kDisentangled) row.times_ratio = times_ratio(m, v);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string render_cost_table(const std::vector<CostRow>& rows, OutputFormat format) {
  auto violations = [](const CostBreakdown& b) {
    std::string out;
    for (const auto& v : b.validity) {
      if (!v.holds) out += (out.empty() ? "" : ";") + v.constraint;
    }
    return out;
  };
  switch (format) {
    case OutputFormat::kJson: {
      ojson arr = ojson::array();
      for (const auto& r : rows) {
        ojson j = cost_json(r.breakdown);
        j["baseline"] = r.baseline;
        j["times_ratio"] = r.times_ratio ? ojson(*r.times_ratio) : ojson(nullptr);
        arr.push_back(j);
      }
      return ojson{{"schema", kCostSchema}, {"rows", arr}}.dump(2) + "\n";
    }
    case OutputFormat::kCsv: {
      std::string out = "# " + std::string(kCostSchema) +
                        "\nm,v,strategy,g,total,baseline,times_ratio,valid,violations\n";
      for (const auto& r : rows) {
        const auto& b = r.breakdown;
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", b.m, b.v, to_string(b.strategy),
                           num(b.g), num(b.total), num(r.baseline),
                           r.times_ratio ? num(*r.times_ratio) : "", b.valid() ? "true" : "false",
                           violations(b));
      }
      return out;
    }
    case OutputFormat::kText: {
      std::string out = fmt::format("{:>3} {:>4}  {:<24} {:>14} {:>14} {:>8}  {}\n", "m", "v",
                                    "strategy", "total", "baseline", "ratio", "validity");
      for (const auto& r : rows) {
        const auto& b = r.breakdown;
        const auto bad = violations(b);
        out += fmt::format("{:>3} {:>4}  {:<24} {:>14.4f} {:>14.4f} {:>8}  {}\n", b.m, b.v,
                           to_string(b.strategy), b.total, r.baseline,
                           r.times_ratio ? fmt::format("{:.4f}", *r.times_ratio) : "-",
                           bad.empty() ? "ok" : "invalid: " + bad);
      }
      return out;
    }
  }
  return {};
}

}  // namespace ngs
