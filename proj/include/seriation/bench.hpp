// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "seriation/estimators.hpp"
#include "seriation/noise.hpp"
#include "seriation/signal.hpp"

namespace seriation {

struct ExperimentGrid {
  /// 1..6 selects a benchmark setting; 0 means custom_signal is used.
  int setting = 1;
  std::optional<ToeplitzSignal> custom_signal{};
  Index n = 100;
  std::vector<double> sigma_grid{};
  NoiseFamily family = NoiseFamily::Gaussian;
  Index replicates = 50;
  std::vector<Estimator> estimators{Estimator::AS, Estimator::SS};
  std::uint64_t base_seed = 20240917;

  friend bool operator==(const ExperimentGrid&, const ExperimentGrid&) = default;
};

/// Throws InvalidInput (or InvalidDimension / UnknownSetting) when the grid
/// cannot be run: empty or non-increasing sigma grid, R < 1, LSE with n > 8,
/// custom signal of the wrong size.
void validate(const ExperimentGrid& grid);

ToeplitzSignal grid_signal(const ExperimentGrid& grid);

struct RunOptions {
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Measure wall time per estimator call. Off by default so that repeated
  /// runs emit identical bytes.
  bool record_timing = false;
  EstimatorOptions estimator{};
};

struct CellResult {
  int setting = 0;
  Index n = 0;
  double sigma = 0.0;
  NoiseFamily family = NoiseFamily::Gaussian;
  Estimator estimator = Estimator::AS;
  Index replicates = 0;
  Index failures = 0;
  double failure_rate = 0.0;
  double mean_runtime_ms = 0.0;
  Index error_count = 0;

  friend bool operator==(const CellResult&, const CellResult&) = default;
};

/// Truth and observation of replicate r at grid point sigma_index.
Observation grid_observation(const ExperimentGrid& grid, const ToeplitzSignal& signal,
                             std::size_t sigma_index, Index replicate);

/// One CellResult per (estimator, sigma), sorted by estimator then sigma.
/// All estimators see the same observations.
std::vector<CellResult> run_grid(const ExperimentGrid& grid, const RunOptions& options = {});

struct Transition {
  bool found = false;
  /// Interpolated sigma at which failure_rate crosses 0.5 (+inf if never).
  double sigma = 0.0;
  /// The same point in grid-index units (grid size if never).
  double position = 0.0;
};

/// First grid sigma with failure_rate > 0.5, linearly interpolated against
/// the preceding grid point. Only cells for `estimator` are read; they must
/// share one sigma grid.
Transition transition_sigma(const std::vector<CellResult>& results, Estimator estimator);

/// Spearman correlation (up to reversal) between the rank vectors of each
/// estimate and of `truth`.
std::map<Estimator, double> run_spearman_eval(const SymMatrixd& y, const Permutation& truth,
                                              const std::vector<Estimator>& estimators,
                                              const EstimatorOptions& options = {});

// ---------------------------------------------------------------------------
// Lower-bound laboratory
// ---------------------------------------------------------------------------

struct LowerBoundReport {
  std::string construction;
  std::map<std::string, double> parameters{};
  double measured_rho_star = 0.0;
  bool has_interval = false;
  double predicted_low = 0.0;
  double predicted_high = 0.0;
  /// Set when no distinguishable pair exists (single-element sets).
  bool degenerate = false;
  bool passed = false;
  std::map<std::string, double> estimator_failure_rates{};
  std::vector<std::string> notes{};
};

struct PackingRunOptions {
  /// Replicates of each estimator at sigma = 1; 0 skips the estimator runs.
  Index replicates = 0;
  std::uint64_t seed = 1;
  std::vector<Estimator> estimators{Estimator::AS, Estimator::SS};
};

/// Tridiagonal signal against a greedy Hamming packing: checks
/// sqrt(2d) delta <= rho* <= 2 sqrt(n) delta.
LowerBoundReport verify_lower_bound_packing(Index n, double delta, Index d, Index budget,
                                            const PackingRunOptions& run = {});

/// Squared norm of column i of (A - B), with A the linear family and B its
/// quarter-swap conjugate, for each i < n/4.
std::vector<double> quarter_swap_column_norms(Index n, double lambda);

/// beta^2 n (n/2 - 1)(n/2 + 1) / 6.
double quarter_swap_column_value(Index n, double lambda);

/// Linear family against the quarter swap: per-column identity to 1e-9
/// relative and beta^2 n^4 / 192 <= ||A - B||_F^2 <= beta^2 n^4.
LowerBoundReport verify_quarter_swap(Index n, double lambda);

struct Lemma7Report {
  Index n = 0;
  double delta = 0.0;
  double max_value_error = 0.0;
  double max_vector_error = 0.0;
  bool passed = false;
};

inline constexpr double kLemma7ValueTolerance = 1e-8;
inline constexpr double kLemma7VectorTolerance = 1e-7;

/// 4 delta sin^2(pi k / 2n).
double path_laplacian_eigenvalue(Index n, double delta, Index k);
/// sqrt(2/n) cos(pi k (j + 1/2) / n) (k = 0 gives 1/sqrt(n)).
double path_laplacian_eigenvector(Index n, Index k, Index j);

Lemma7Report verify_lemma7(Index n, double delta);

struct NoiselessReport {
  Index cases = 0;
  Index as_failures = 0;
  Index ss_failures = 0;
  /// Spectral cases skipped because the Fiedler components were not distinct.
  Index ss_skipped = 0;
  Index ss_errors = 0;
  std::map<int, Index> ss_skipped_by_setting{};
};

/// Noiseless recovery sweep over settings x sizes x `count` random truths.
NoiselessReport verify_noiseless(const std::vector<int>& settings, const std::vector<Index>& sizes,
                                 Index count, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "setting,n,sigma,family,estimator,replicates,failures,failure_rate,mean_runtime_ms,error_count";

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

void write_csv(std::ostream& out, const std::vector<CellResult>& results);

}  // namespace seriation
