// SPDX-License-Identifier: Apache-2.0
//
// seriate: command-line front end.
//
//   seriate generate --setting 1 --n 100 --out theta.json
//   seriate generate --setting 1 --n 100 --sigma 0.05 --seed 7 --truth-out truth.csv --out Y.csv
//   seriate reorder  --alg as --input Y.csv --out result.json
//   seriate bench    --config configs/setting1_n100.json --out results.csv --threads 8
//   seriate verify   --check lemma7 --n 16 --delta 0.5
//
// Exit status: 0 success, 1 failed verification, 2 usage or input error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "seriation/bench.hpp"
#include "seriation/errors.hpp"
#include "seriation/estimators.hpp"
#include "seriation/io.hpp"
#include "seriation/noise.hpp"
#include "seriation/signal.hpp"

namespace fs = std::filesystem;
using namespace seriation;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

bool has_extension(const std::string& path, const char* ext) {
  return fs::path(path).extension() == ext;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  int setting = 1;
  std::string signal_path;
  Index n = 100;
  double sigma = 0.0;
  std::string family = "gaussian";
  std::uint64_t seed = 1;
  bool permute = false;
  std::string truth_out;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  const ToeplitzSignal signal =
      a.signal_path.empty() ? make_setting(a.setting, a.n) : signal_from_json(read_json_file(a.signal_path));
  if (has_extension(a.out, ".json")) {
    emit(a.out, to_json(signal).dump(2) + "\n");
    return kExitOk;
  }
  const bool shuffle = a.permute || a.sigma > 0.0 || !a.truth_out.empty();
  const Permutation truth = shuffle ? random_permutation(signal.size(), stream_key(a.seed, "perm", 0, 0, 0))
                                    : Permutation::identity(signal.size());
  const SymMatrixd y =
      a.sigma > 0.0
          ? observe(signal, truth,
                    NoiseSpec{parse_noise_family(a.family), a.sigma, stream_key(a.seed, "noise", 0, 0, 0)})
                .y
          : observe_noiseless(signal, truth);
  std::ostringstream csv;
  write_matrix_csv(csv, y);
  emit(a.out, csv.str());
  if (!a.truth_out.empty()) {
    std::ostringstream perm;
    write_permutation_csv(perm, truth);
    write_text_file(a.truth_out, perm.str());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct ReorderArgs {
  std::string alg = "as";
  std::string input;
  std::string perms;
  std::string out;
  bool symmetrize = false;
  bool strict_rows = false;
  std::string direction = "decreasing";
  bool enforce_ridge = false;
  double eps_degree = -1.0;
};

int run_reorder(const ReorderArgs& a) {
  const SymMatrixd y = read_matrix_csv(a.input, a.symmetrize);
  EstimatorOptions options;
  options.sorting.alignment = a.strict_rows ? RowAlignment::Positional : RowAlignment::CommonSupport;
  options.sorting.direction =
      a.direction == "increasing" ? SortDirection::Increasing : SortDirection::Decreasing;
  options.spectral.eps_degree = a.eps_degree;
  options.projection.enforce_ridge = a.enforce_ridge;
  if (!a.perms.empty()) options.candidates = read_permutations_csv(a.perms);
  const ReorderResult result = run_estimator(parse_estimator(a.alg), y, options);
  emit(a.out, to_json(result).dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string config;
  std::string out;
  std::string json_out;
  unsigned threads = 0;
  bool timing = false;
};

int run_bench(const BenchArgs& a) {
  Json config = read_json_file(a.config);
  if (config.contains("signal_file")) {
    const fs::path base = fs::path(a.config).parent_path();
    config["signal"] = read_json_file(base / config.at("signal_file").get<std::string>());
  }
  const ExperimentGrid grid = grid_from_json(config);
  RunOptions options;
  options.threads = a.threads;
  options.record_timing = a.timing;
  const auto results = run_grid(grid, options);

  std::ostringstream csv;
  write_csv(csv, results);
  emit(a.out, csv.str());
  if (!a.json_out.empty()) write_text_file(a.json_out, results_to_json(grid, results).dump(2) + "\n");

  for (Estimator e : grid.estimators) {
    const Transition t = transition_sigma(results, e);
    std::cerr << to_string(e) << ": transition sigma "
              << (t.found ? format_double(t.sigma) : std::string("not reached")) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string check;
  Index n = 8;
  double delta = 1.0;
  Index d = 2;
  Index budget = 100;
  double lambda = 1.0;
  double sigma = 0.1;
  Index count = 20;
  std::uint64_t seed = 1;
  Index replicates = 0;
  std::vector<int> settings{1, 2, 3, 4, 5, 6};
  std::vector<Index> sizes{10, 20, 50};
};

int verify_lse_oracle(const VerifyArgs& a) {
  if (a.n < 2 || a.n > 7) throw InvalidInput("lse-oracle supports 2 <= n <= 7");
  const ToeplitzSignal signal = make_setting(1, a.n);
  const auto perms = all_permutations(a.n);
  double worst = 0.0;
  Index mismatches = 0;
  for (Index r = 0; r < a.count; ++r) {
    const auto ru = static_cast<std::uint64_t>(r);
    const Observation obs =
        observe(signal, random_permutation(a.n, stream_key(a.seed, "perm", 1, 0, ru)),
                NoiseSpec{NoiseFamily::Gaussian, a.sigma, stream_key(a.seed, "noise", 1, 0, ru)});
    const LseSolution fast = lse_exhaustive(obs.y, perms);
    const oracle::NaiveLse slow = oracle::naive_lse(obs.y.dense(), kLseTieTolerance);
    const double rel = std::abs(fast.objective - slow.objective) / std::max(1.0, std::abs(slow.objective));
    worst = std::max(worst, rel);
    mismatches += rel > 1e-10;
  }
  const Json report{{"check", "lse-oracle"}, {"n", a.n},           {"instances", a.count},
                    {"sigma", a.sigma},      {"max_relative_gap", worst}, {"mismatches", mismatches},
                    {"passed", mismatches == 0}};
  std::cout << report.dump(2) << '\n';
  return mismatches == 0 ? kExitOk : kExitFailed;
}

int run_verify(const VerifyArgs& a) {
  if (a.check == "lemma7") {
    const Lemma7Report r = verify_lemma7(a.n, a.delta);
    std::cout << to_json(r).dump(2) << '\n';
    return r.passed ? kExitOk : kExitFailed;
  }
  if (a.check == "packing") {
    PackingRunOptions run;
    run.replicates = a.replicates;
    run.seed = a.seed;
    const LowerBoundReport r = verify_lower_bound_packing(a.n, a.delta, a.d, a.budget, run);
    std::cout << to_json(r).dump(2) << '\n';
    return r.passed ? kExitOk : kExitFailed;
  }
  if (a.check == "quarterswap") {
    const LowerBoundReport r = verify_quarter_swap(a.n, a.lambda);
    std::cout << to_json(r).dump(2) << '\n';
    return r.passed ? kExitOk : kExitFailed;
  }
  if (a.check == "noiseless") {
    const NoiselessReport r = verify_noiseless(a.settings, a.sizes, a.count, a.seed);
    std::cout << to_json(r).dump(2) << '\n';
    return r.as_failures == 0 && r.ss_failures == 0 && r.ss_errors == 0 ? kExitOk : kExitFailed;
  }
  return verify_lse_oracle(a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seriation of noisy permuted monotone Toeplitz matrices"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a benchmark signal (.json) or matrix (.csv)");
  generate->add_option("--setting", gen.setting, "Benchmark setting 1-6")->check(CLI::Range(1, 6));
  generate->add_option("--signal", gen.signal_path, "Signal JSON {n, theta} instead of a setting")
      ->check(CLI::ExistingFile);
  generate->add_option("--n", gen.n, "Matrix size")->check(CLI::Range(2, 100000));
  generate->add_option("--sigma", gen.sigma, "Noise level (0 writes the noiseless matrix)")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--family", gen.family, "gaussian or laplace")
      ->check(CLI::IsMember({"gaussian", "laplace"}));
  generate->add_option("--seed", gen.seed, "Seed for the permutation and the noise");
  generate->add_flag("--permute", gen.permute, "Shuffle rows and columns even without noise");
  generate->add_option("--truth-out", gen.truth_out, "Write the true permutation (1-based CSV)");
  generate->add_option("--out", gen.out, "Output path (.json or .csv), '-' for stdout")->required();

  ReorderArgs ro;
  auto* reorder = app.add_subcommand("reorder", "Estimate the ordering of a similarity matrix");
  reorder->add_option("--alg", ro.alg, "as, ss, ssn or lse")
      ->check(CLI::IsMember({"as", "ss", "ssn", "lse"}, CLI::ignore_case));
  reorder->add_option("--input", ro.input, "Matrix CSV")->required()->check(CLI::ExistingFile);
  reorder->add_option("--perms", ro.perms, "Candidate permutations for lse (1-based CSV rows)")
      ->check(CLI::ExistingFile);
  reorder->add_option("--out", ro.out, "Result JSON, '-' for stdout")->default_val("-");
  reorder->add_flag("--symmetrize", ro.symmetrize, "Average A and A^T instead of rejecting asymmetry");
  reorder->add_flag("--strict-rows", ro.strict_rows, "as: compare reduced rows by position");
  reorder->add_option("--direction", ro.direction, "as: decreasing or increasing")
      ->check(CLI::IsMember({"decreasing", "increasing"}));
  reorder->add_flag("--enforce-ridge", ro.enforce_ridge, "lse: also impose the ridge condition");
  reorder->add_option("--eps-degree", ro.eps_degree, "ssn: smallest admissible |degree|");

  BenchArgs be;
  auto* bench = app.add_subcommand("bench", "Run a failure-rate grid");
  bench->add_option("--config", be.config, "Experiment grid JSON")->required()->check(CLI::ExistingFile);
  bench->add_option("--out", be.out, "Results CSV, '-' for stdout")->default_val("-");
  bench->add_option("--json", be.json_out, "Also write {grid, results} JSON");
  bench->add_option("--threads", be.threads, "Worker threads (0 = all cores)");
  bench->add_flag("--timing", be.timing, "Record mean_runtime_ms (output is then not reproducible)");

  VerifyArgs ve;
  auto* verify = app.add_subcommand("verify", "Check a closed-form or structural property");
  verify->add_option("--check", ve.check, "lemma7, packing, quarterswap, noiseless or lse-oracle")
      ->required()
      ->check(CLI::IsMember({"lemma7", "packing", "quarterswap", "noiseless", "lse-oracle"}));
  verify->add_option("--n", ve.n, "Matrix size");
  verify->add_option("--delta", ve.delta, "Tridiagonal signal strength");
  verify->add_option("--d", ve.d, "Packing distance");
  verify->add_option("--budget", ve.budget, "Packing size limit");
  verify->add_option("--lambda", ve.lambda, "Ridge height of the linear family");
  verify->add_option("--sigma", ve.sigma, "Noise level (lse-oracle)");
  verify->add_option("--count", ve.count, "Instances per configuration");
  verify->add_option("--replicates", ve.replicates, "packing: estimator runs at sigma = 1");
  verify->add_option("--seed", ve.seed, "Seed");
  verify->add_option("--settings", ve.settings, "noiseless: settings to sweep");
  verify->add_option("--sizes", ve.sizes, "noiseless: sizes to sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*reorder) return run_reorder(ro);
    if (*bench) return run_bench(be);
    return run_verify(ve);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
