// SPDX-License-Identifier: Apache-2.0
#include "seriation/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <thread>

#include "seriation/eigen_sym.hpp"
#include "seriation/errors.hpp"

namespace seriation {

void validate(const ExperimentGrid& grid) {
  if (grid.n < 2) throw InvalidDimension("grid n must be >= 2");
  if (grid.setting == 0) {
    if (!grid.custom_signal) throw InvalidInput("setting 0 needs a custom signal");
    if (grid.custom_signal->size() != grid.n) throw DimensionMismatch("custom signal size != n");
  } else if (grid.setting < 1 || grid.setting > 6) {
    throw UnknownSetting("setting " + std::to_string(grid.setting));
  }
  if (grid.sigma_grid.empty()) throw InvalidInput("sigma grid is empty");
  for (std::size_t i = 0; i < grid.sigma_grid.size(); ++i) {
    if (!(grid.sigma_grid[i] > 0.0) || !std::isfinite(grid.sigma_grid[i])) {
      throw InvalidInput("sigma grid values must be positive and finite");
    }
    if (i > 0 && !(grid.sigma_grid[i] > grid.sigma_grid[i - 1])) {
      throw InvalidInput("sigma grid must be strictly increasing");
    }
  }
  if (grid.replicates < 1) throw InvalidInput("replicates must be >= 1");
  if (grid.estimators.empty()) throw InvalidInput("no estimators selected");
  for (Estimator e : grid.estimators) {
    if (e == Estimator::LSE && grid.n > 8) throw InvalidInput("LSE is limited to n <= 8");
  }
}

ToeplitzSignal grid_signal(const ExperimentGrid& grid) {
  return grid.setting == 0 ? *grid.custom_signal : make_setting(grid.setting, grid.n);
}

Observation grid_observation(const ExperimentGrid& grid, const ToeplitzSignal& signal,
                             std::size_t sigma_index, Index replicate) {
  const auto setting = static_cast<std::uint64_t>(grid.setting);
  const auto r = static_cast<std::uint64_t>(replicate);
  const Permutation truth =
      random_permutation(grid.n, stream_key(grid.base_seed, "perm", setting, sigma_index, r));
  const NoiseSpec spec{grid.family, grid.sigma_grid[sigma_index],
                       stream_key(grid.base_seed, "noise", setting, sigma_index, r)};
  return observe(signal, truth, spec);
}

namespace {

struct Outcome {
  bool failed = false;
  bool error = false;
  double ms = 0.0;
};

template <typename Task>
void parallel_for(std::size_t count, unsigned threads, Task task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

std::vector<CellResult> run_grid(const ExperimentGrid& grid, const RunOptions& options) {
  validate(grid);
  const ToeplitzSignal signal = grid_signal(grid);

  std::vector<Estimator> estimators = grid.estimators;
  std::sort(estimators.begin(), estimators.end());
  estimators.erase(std::unique(estimators.begin(), estimators.end()), estimators.end());

  EstimatorOptions est_options = options.estimator;
  if (std::find(estimators.begin(), estimators.end(), Estimator::LSE) != estimators.end() &&
      est_options.candidates.empty()) {
    est_options.candidates = all_permutations(grid.n);
  }

  const std::size_t n_sigma = grid.sigma_grid.size();
  const auto n_rep = static_cast<std::size_t>(grid.replicates);
  const std::size_t n_est = estimators.size();
  std::vector<Outcome> outcomes(n_sigma * n_rep * n_est);

  parallel_for(n_sigma * n_rep, options.threads, [&](std::size_t cell) {
    const std::size_t s = cell / n_rep;
    const std::size_t r = cell % n_rep;
    const Observation obs = grid_observation(grid, signal, s, static_cast<Index>(r));
    for (std::size_t e = 0; e < n_est; ++e) {
      Outcome& out = outcomes[(e * n_sigma + s) * n_rep + r];
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const ReorderResult est = run_estimator(estimators[e], obs.y, est_options);
        out.failed = tau_loss(signal, est.perm, obs.truth) != 0;
      } catch (const Error&) {
        out.failed = true;
        out.error = true;
      }
      if (options.record_timing) {
        out.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      }
    }
  });

  std::vector<CellResult> results;
  results.reserve(n_est * n_sigma);
  for (std::size_t e = 0; e < n_est; ++e) {
    for (std::size_t s = 0; s < n_sigma; ++s) {
      CellResult c;
      c.setting = grid.setting;
      c.n = grid.n;
      c.sigma = grid.sigma_grid[s];
      c.family = grid.family;
      c.estimator = estimators[e];
      c.replicates = grid.replicates;
      double total_ms = 0.0;
      for (std::size_t r = 0; r < n_rep; ++r) {
        const Outcome& out = outcomes[(e * n_sigma + s) * n_rep + r];
        c.failures += out.failed;
        c.error_count += out.error;
        total_ms += out.ms;
      }
      c.failure_rate = static_cast<double>(c.failures) / static_cast<double>(c.replicates);
      c.mean_runtime_ms = total_ms / static_cast<double>(c.replicates);
      results.push_back(c);
    }
  }
  return results;
}

Transition transition_sigma(const std::vector<CellResult>& results, Estimator estimator) {
  std::vector<CellResult> cells;
  for (const auto& c : results) {
    if (c.estimator == estimator) cells.push_back(c);
  }
  if (cells.empty()) throw InvalidInput("no cells for estimator " + to_string(estimator));
  std::sort(cells.begin(), cells.end(),
            [](const CellResult& a, const CellResult& b) { return a.sigma < b.sigma; });

  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].failure_rate <= 0.5) continue;
    if (i == 0) return Transition{true, cells[0].sigma, 0.0};
    const double r0 = cells[i - 1].failure_rate;
    const double r1 = cells[i].failure_rate;
    const double t = (0.5 - r0) / (r1 - r0);
    return Transition{true, cells[i - 1].sigma + t * (cells[i].sigma - cells[i - 1].sigma),
                      static_cast<double>(i - 1) + t};
  }
  return Transition{false, std::numeric_limits<double>::infinity(),
                    static_cast<double>(cells.size())};
}

std::map<Estimator, double> run_spearman_eval(const SymMatrixd& y, const Permutation& truth,
                                              const std::vector<Estimator>& estimators,
                                              const EstimatorOptions& options) {
  if (truth.size() != y.size()) throw DimensionMismatch("run_spearman_eval");
  const Permutation truth_ranks = truth.inverse();
  std::map<Estimator, double> out;
  for (Estimator e : estimators) {
    const ReorderResult r = run_estimator(e, y, options);
    out[e] = spearman_up_to_reversal(r.perm.inverse(), truth_ranks);
  }
  return out;
}

// ---------------------------------------------------------------------------

LowerBoundReport verify_lower_bound_packing(Index n, double delta, Index d, Index budget,
                                            const PackingRunOptions& run) {
  LowerBoundReport report;
  report.construction = "packing_tridiagonal";
  report.parameters = {{"n", static_cast<double>(n)},
                       {"delta", delta},
                       {"d", static_cast<double>(d)},
                       {"budget", static_cast<double>(budget)}};
  const PackingSet set = build_packing_set(n, d, budget);
  const ToeplitzSignal signal = make_tridiagonal(n, delta);
  report.parameters["set_size"] = static_cast<double>(set.perms.size());
  report.has_interval = true;
  report.predicted_low = std::sqrt(2.0 * static_cast<double>(d)) * delta;
  report.predicted_high = 2.0 * std::sqrt(static_cast<double>(n)) * delta;

  if (!verify_packing(set)) {
    report.notes.emplace_back("packing re-verification failed");
    return report;
  }
  if (set.perms.size() < 2) {
    report.degenerate = true;
    report.measured_rho_star = kNoDistinguishablePair;
    report.notes.emplace_back("single-element packing: no pair to measure");
    return report;
  }
  report.measured_rho_star = rho_star({signal}, set.perms);
  report.passed = report.measured_rho_star >= report.predicted_low * (1.0 - 1e-12) &&
                  report.measured_rho_star <= report.predicted_high * (1.0 + 1e-12);

  if (run.replicates > 0) {
    EstimatorOptions options;
    for (Estimator e : run.estimators) {
      Index failures = 0;
      for (Index r = 0; r < run.replicates; ++r) {
        const auto ru = static_cast<std::uint64_t>(r);
        const auto pick = stream_key(run.seed, "perm", 0, 0, ru) % set.perms.size();
        const Permutation& truth = set.perms[static_cast<std::size_t>(pick)];
        const Observation obs =
            observe(signal, truth, NoiseSpec{NoiseFamily::Gaussian, 1.0, stream_key(run.seed, "noise", 0, 0, ru)});
        try {
          failures += tau_loss(signal, run_estimator(e, obs.y, options).perm, truth);
        } catch (const Error&) {
          ++failures;
        }
      }
      report.estimator_failure_rates[to_string(e)] =
          static_cast<double>(failures) / static_cast<double>(run.replicates);
    }
  }
  return report;
}

double quarter_swap_column_value(Index n, double lambda) {
  const double nd = static_cast<double>(n);
  const double beta = lambda / (nd / 2.0 - 1.0);
  return beta * beta * nd * (nd / 2.0 - 1.0) * (nd / 2.0 + 1.0) / 6.0;
}

std::vector<double> quarter_swap_column_norms(Index n, double lambda) {
  const ToeplitzSignal signal = make_linear_family(n, 0.0, lambda);
  const SymMatrixd a = to_dense(signal);
  const SymMatrixd b = conjugate(a, quarter_swap(n));
  const Matrix<double> diff = a.dense() - b.dense();
  std::vector<double> out;
  for (Index i = 0; i < n / 4; ++i) out.push_back(diff.col(i).squaredNorm());
  return out;
}

LowerBoundReport verify_quarter_swap(Index n, double lambda) {
  LowerBoundReport report;
  report.construction = "quarter_swap_linear";
  report.parameters = {{"n", static_cast<double>(n)}, {"lambda", lambda}};
  const ToeplitzSignal signal = make_linear_family(n, 0.0, lambda);
  const double nd = static_cast<double>(n);
  const double beta = lambda / (nd / 2.0 - 1.0);
  const double expected = quarter_swap_column_value(n, lambda);
  report.parameters["beta"] = beta;
  report.parameters["column_value"] = expected;

  bool columns_ok = true;
  double worst = 0.0;
  for (double v : quarter_swap_column_norms(n, lambda)) {
    const double rel = std::abs(v - expected) / expected;
    worst = std::max(worst, rel);
    columns_ok = columns_ok && rel <= 1e-9;
  }
  report.parameters["max_column_relative_error"] = worst;

  const SymMatrixd a = to_dense(signal);
  const double total = std::pow(frobenius_dist(a, conjugate(a, quarter_swap(n))), 2);
  const double unit = beta * beta * std::pow(nd, 4);
  report.parameters["squared_distance"] = total;
  report.parameters["global_ratio"] = total / unit;
  const bool sandwich = total >= unit / 192.0 * (1.0 - 1e-12) && total <= unit * (1.0 + 1e-12);

  report.measured_rho_star = rho(signal, {Permutation::identity(n), quarter_swap(n)});
  report.parameters["rho_star_over_n_lambda"] = report.measured_rho_star / (nd * lambda);
  report.has_interval = true;
  report.predicted_low = std::sqrt(unit / 192.0);
  report.predicted_high = std::sqrt(unit);
  if (!columns_ok) report.notes.emplace_back("per-column identity violated");
  if (!sandwich) report.notes.emplace_back("global sandwich violated");
  report.passed = columns_ok && sandwich;
  return report;
}

double path_laplacian_eigenvalue(Index n, double delta, Index k) {
  const double s = std::sin(std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(n)));
  return 4.0 * delta * s * s;
}

double path_laplacian_eigenvector(Index n, Index k, Index j) {
  const double nd = static_cast<double>(n);
  if (k == 0) return 1.0 / std::sqrt(nd);
  return std::sqrt(2.0 / nd) *
         std::cos(std::numbers::pi * static_cast<double>(k) * (static_cast<double>(j) + 0.5) / nd);
}

Lemma7Report verify_lemma7(Index n, double delta) {
  if (n < 3) throw InvalidDimension("verify_lemma7 needs n >= 3");
  Lemma7Report report{n, delta, 0.0, 0.0, false};
  const auto pairs = eigen_sym(laplacian(to_dense(make_tridiagonal(n, delta))));
  for (Index k = 0; k < n; ++k) {
    report.max_value_error = std::max(
        report.max_value_error, std::abs(pairs.values(k) - path_laplacian_eigenvalue(n, delta, k)));
    Vector<double> u(n);
    for (Index j = 0; j < n; ++j) u(j) = path_laplacian_eigenvector(n, k, j);
    const auto v = pairs.vectors.col(k);
    const double err = std::min((v - u).norm(), (v + u).norm());
    report.max_vector_error = std::max(report.max_vector_error, err);
  }
  report.passed = report.max_value_error < kLemma7ValueTolerance &&
                  report.max_vector_error < kLemma7VectorTolerance;
  return report;
}

NoiselessReport verify_noiseless(const std::vector<int>& settings, const std::vector<Index>& sizes,
                                 Index count, std::uint64_t seed) {
  NoiselessReport report;
  for (int setting : settings) {
    for (Index n : sizes) {
      const ToeplitzSignal signal = make_setting(setting, n);
      for (Index r = 0; r < count; ++r) {
        const Permutation truth = random_permutation(
            n, stream_key(seed, "perm", static_cast<std::uint64_t>(setting), static_cast<std::uint64_t>(n),
                          static_cast<std::uint64_t>(r)));
        const SymMatrixd y = observe_noiseless(signal, truth);
        ++report.cases;
        report.as_failures += tau_loss(signal, adaptive_sort(y).perm, truth);
        try {
          const ReorderResult ss = spectral_seriate(y);
          const auto& diag = std::get<SpectralDiagnostics>(ss.diagnostics);
          if (!diag.distinct_components) {
            ++report.ss_skipped;
            ++report.ss_skipped_by_setting[setting];
          } else {
            report.ss_failures += tau_loss(signal, ss.perm, truth);
          }
        } catch (const Error&) {
          ++report.ss_errors;
        }
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const std::vector<CellResult>& results) {
  out << kCsvHeader << '\n';
  for (const auto& c : results) {
    out << c.setting << ',' << c.n << ',' << format_double(c.sigma) << ',' << to_string(c.family) << ','
        << to_string(c.estimator) << ',' << c.replicates << ',' << c.failures << ','
        << format_double(c.failure_rate) << ',' << format_double(c.mean_runtime_ms) << ','
        << c.error_count << '\n';
  }
  if (!out) throw IoError("failed writing CSV");
}

}  // namespace seriation
