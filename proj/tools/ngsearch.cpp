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

// ngsearch: command-line front end over the nestedgrover C API.
//
// Exit codes: 0 verified solution or completed state preparation, 2 search
// exhausted without a verified solution (or a verify mismatch), 1 bad input.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "nestedgrover/nestedgrover.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnverified = 2;

struct ApiError {
  ng_status status;
  std::string message;
};

void check(ng_status s) {
  if (s != NG_OK) throw ApiError{s, ng_last_error()};
}

struct Deleters {
  void operator()(ng_config* c) const { ng_config_free(c); }
  void operator()(ng_artifact* a) const { ng_artifact_free(a); }
  void operator()(char* s) const { ng_string_free(s); }
};
using ConfigPtr = std::unique_ptr<ng_config, Deleters>;
using ArtifactPtr = std::unique_ptr<ng_artifact, Deleters>;
using StringPtr = std::unique_ptr<char, Deleters>;

const std::map<std::string, ng_format> kFormats = {
    {"json", NG_FORMAT_JSON}, {"csv", NG_FORMAT_CSV}, {"text", NG_FORMAT_TEXT}};

const char* extension(ng_format f) {
  switch (f) {
    case NG_FORMAT_CSV: return "csv";
    case NG_FORMAT_TEXT: return "txt";
    default: return "json";
  }
}

// Temp file next to the target, then rename, so readers never see a partial file.
void write_atomic(const fs::path& target, const std::string& content) {
  static std::atomic<unsigned> counter{0};
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ApiError{NG_ERR_IO, "cannot write " + tmp.string()};
    out << content;
    out.flush();
    if (!out) throw ApiError{NG_ERR_IO, "cannot write " + tmp.string()};
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ApiError{NG_ERR_IO, "cannot rename to " + target.string() + ": " + ec.message()};
  }
}

void emit(const std::string& content, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << content;
    std::cout.flush();
  } else {
    write_atomic(out, content);
  }
}

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<std::string> format;
  bool timing = false;
};

ConfigPtr load(const std::string& path, const RunOptions& opts) {
  ng_config* raw = nullptr;
  check(ng_config_load_file(path.c_str(), &raw));
  ConfigPtr cfg(raw);
  if (opts.seed) check(ng_config_set_seed(cfg.get(), *opts.seed));
  if (opts.shots) check(ng_config_set_shots(cfg.get(), *opts.shots));
  return cfg;
}

ng_format pick_format(const ng_config* cfg, const std::optional<std::string>& flag) {
  if (flag) return kFormats.at(*flag);
  ng_format f = NG_FORMAT_JSON;
  check(ng_config_format(cfg, &f));
  return f;
}

// Returns (rendered output, exit code).
std::pair<std::string, int> run_one(const std::string& path, const RunOptions& opts,
                                    std::optional<ng_format>* used = nullptr) {
  auto cfg = load(path, opts);
  const ng_format format = pick_format(cfg.get(), opts.format);
  if (used) *used = format;
  ng_artifact* raw = nullptr;
  check(ng_run(cfg.get(), &raw));
  ArtifactPtr art(raw);
  int code = 0;
  check(ng_artifact_exit_code(art.get(), &code));
  char* text = nullptr;
  check(ng_artifact_render(art.get(), format, opts.timing ? 1 : 0, &text));
  StringPtr owned(text);
  return {std::string(text), code};
}

int report(const ApiError& e) {
  std::cerr << "ngsearch: " << e.message << "\n";
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nested Grover search experiments and cost tables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ng_version()));

  const auto format_check = CLI::IsMember({"json", "csv", "text"});

  // run ----------------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Run one experiment config");
  std::string run_config;
  std::string run_out;
  RunOptions run_opts;
  run->add_option("--config", run_config, "Experiment config file")->required();
  run->add_option("--seed", run_opts.seed, "Override the config seed");
  run->add_option("--shots", run_opts.shots, "Override the shot count")
      ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
  run->add_option("--format", run_opts.format, "Output format")->check(format_check);
  run->add_option("--out", run_out, "Output file (default stdout)");
  run->add_flag("--timing", run_opts.timing, "Include wall time in JSON output");

  // cost ---------------------------------------------------------------------
  auto* cost = app.add_subcommand("cost", "Tabulate closed-form strategy costs");
  std::string cost_m = "4..20";
  std::string cost_v = "1,2,4";
  std::string cost_strategies = "all";
  std::string cost_format = "text";
  std::string cost_out;
  cost->add_option("--m", cost_m, "Register sizes: a..b, a,b,c or a single value")
      ->capture_default_str();
  cost->add_option("--v", cost_v, "Candidate counts")->capture_default_str();
  cost->add_option("--strategies", cost_strategies, "Comma list or 'all'")->capture_default_str();
  cost->add_option("--format", cost_format, "Output format")->check(format_check)
      ->capture_default_str();
  cost->add_option("--out", cost_out, "Output file (default stdout)");

  // verify -------------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Cross-check fast kernels against dense matrices");
  std::string verify_config;
  std::string verify_format = "text";
  std::string verify_out;
  verify->add_option("--config", verify_config, "Experiment config file")->required();
  verify->add_option("--format", verify_format, "Output format")->check(format_check)
      ->capture_default_str();
  verify->add_option("--out", verify_out, "Output file (default stdout)");

  // sweep --------------------------------------------------------------------
  auto* sweep = app.add_subcommand("sweep", "Run many configs in parallel into a directory");
  std::vector<std::string> sweep_configs;
  std::string sweep_out;
  RunOptions sweep_opts;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  sweep->add_option("--config,configs", sweep_configs, "Experiment config files")->required();
  sweep->add_option("--out", sweep_out, "Output directory")->required();
  sweep->add_option("--seed", sweep_opts.seed, "Override every config seed");
  sweep->add_option("--shots", sweep_opts.shots, "Override every shot count")
      ->check(CLI::Range(std::uint64_t{1}, UINT64_MAX));
  sweep->add_option("--format", sweep_opts.format, "Output format")->check(format_check);
  sweep->add_option("--jobs,-j", jobs, "Parallel runs")->check(CLI::Range(1u, 256u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*run) {
      auto [text, code] = run_one(run_config, run_opts);
      emit(text, run_out);
      return code;
    }

    if (*cost) {
      char* text = nullptr;
      check(ng_cost_table(cost_m.c_str(), cost_v.c_str(), cost_strategies.c_str(),
                          kFormats.at(cost_format), &text));
      StringPtr owned(text);
      emit(text, cost_out);
      return kExitOk;
    }

    if (*verify) {
      auto cfg = load(verify_config, {});
      char* text = nullptr;
      int passed = 0;
      check(ng_verify(cfg.get(), kFormats.at(verify_format), &text, &passed));
      StringPtr owned(text);
      emit(text, verify_out);
      return passed ? kExitOk : kExitUnverified;
    }

    if (*sweep) {
      fs::create_directories(sweep_out);
      std::vector<int> codes(sweep_configs.size(), kExitError);
      std::vector<std::string> lines(sweep_configs.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (std::size_t i = next++; i < sweep_configs.size(); i = next++) {
          const auto& path = sweep_configs[i];
          try {
            std::optional<ng_format> used;
            auto [text, code] = run_one(path, sweep_opts, &used);
            const fs::path target =
                fs::path(sweep_out) / (fs::path(path).stem().string() + "." + extension(*used));
            write_atomic(target, text);
            codes[i] = code;
            lines[i] = path + "\t" + std::to_string(code) + "\t" + target.string();
          } catch (const ApiError& e) {
            codes[i] = kExitError;
            lines[i] = path + "\t" + std::to_string(kExitError) + "\t" + e.message;
          }
        }
      };
      std::vector<std::thread> pool;
      const unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(sweep_configs.size()));
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
      for (const auto& line : lines) std::cout << line << "\n";
      if (std::count(codes.begin(), codes.end(), kExitError)) return kExitError;
      if (std::count(codes.begin(), codes.end(), kExitUnverified)) return kExitUnverified;
      return kExitOk;
    }
  } catch (const ApiError& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "ngsearch: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
