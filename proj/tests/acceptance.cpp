// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failed criteria. The configs directory may be given as argv[1].

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "seriation/bench.hpp"
#include "seriation/errors.hpp"
#include "seriation/io.hpp"

using namespace seriation;

namespace {

// Pinned tolerances and limits.
constexpr double kLseRelTolerance = 1e-10;
constexpr double kNoiselessObjective = 1e-20;
constexpr double kTransitionSlack = 1.0;  // grid steps
constexpr double kPavaTolerance = 1e-12;
constexpr double kRidgeTolerance = 1e-9;

constexpr double kLimitLemma7 = 5.0;
constexpr double kLimitNoiseless = 60.0;
constexpr double kLimitLse = 120.0;
constexpr double kLimitBounds = 60.0;
constexpr double kLimitOrdering = 30.0 * 60.0;
constexpr double kLimitLaplace = 10.0 * 60.0;
constexpr double kLimitScaling = 20.0 * 60.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::filesystem::path g_configs = SERIATION_CONFIG_DIR;

ExperimentGrid load(const std::string& name) { return grid_from_json(read_json_file(g_configs / name)); }

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string csv_of(const std::vector<CellResult>& r) {
  std::ostringstream out;
  write_csv(out, r);
  return out.str();
}

Outcome with_limit(Outcome o, double seconds, double limit) {
  if (seconds > limit) {
    o.pass = false;
    o.detail += "; over the " + fmt("%.0f", limit) + " s limit";
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome path_spectrum() {
  double worst_value = 0.0;
  double worst_vector = 0.0;
  bool ok = true;
  for (Index n : {4, 8, 16, 32, 64}) {
    for (double delta : {0.5, 1.0, 3.0}) {
      const Lemma7Report r = verify_lemma7(n, delta);
      ok = ok && r.passed && r.max_value_error <= kLemma7ValueTolerance &&
           r.max_vector_error <= kLemma7VectorTolerance;
      worst_value = std::max(worst_value, r.max_value_error);
      worst_vector = std::max(worst_vector, r.max_vector_error);
    }
  }
  return {ok, "max eigenvalue error " + fmt("%.2e", worst_value) + ", max eigenvector error " +
                  fmt("%.2e", worst_vector)};
}

Outcome noiseless_exactness() {
  const NoiselessReport r = verify_noiseless({1, 2, 3, 4, 5, 6}, {10, 20, 50}, 100, 20240917);
  Index skipped_3_to_6 = 0;
  for (const auto& [setting, count] : r.ss_skipped_by_setting)
    if (setting >= 3) skipped_3_to_6 += count;
  const bool ok = r.cases == 1800 && r.as_failures == 0 && r.ss_failures == 0 && r.ss_errors == 0 &&
                  skipped_3_to_6 == 0;
  std::string detail = std::to_string(r.cases) + " cases, AS failures " + std::to_string(r.as_failures) +
                       ", SS failures " + std::to_string(r.ss_failures) + ", SS errors " +
                       std::to_string(r.ss_errors) + ", SS skipped (non-distinct Fiedler components)";
  for (const auto& [setting, count] : r.ss_skipped_by_setting)
    detail += " s" + std::to_string(setting) + "=" + std::to_string(count);
  if (r.ss_skipped_by_setting.empty()) detail += " none";
  return {ok, detail};
}

Outcome lse_oracle() {
  double worst = 0.0;
  Index noisy_cases = 0;
  Index noiseless_bad = 0;
  Index noiseless_cases = 0;
  for (Index n : {4, 5, 6}) {
    const ToeplitzSignal s = make_setting(5, n);
    const auto perms = all_permutations(n);
    for (Index i = 0; i < 20; ++i) {
      const double sigma = i % 2 == 0 ? 0.1 : 0.5 * s.theta[1];
      const auto seed = stream_key(31, "lse-acceptance", static_cast<std::uint64_t>(n), 0,
                                   static_cast<std::uint64_t>(i));
      const Permutation truth = random_permutation(n, seed);
      const SymMatrixd y = observe(s, truth, NoiseSpec{NoiseFamily::Gaussian, sigma, seed + 1}).y;
      const LseSolution fast = lse_exhaustive(y, perms);
      const oracle::NaiveLse slow = oracle::naive_lse(y.dense(), kLseTieTolerance);
      worst = std::max(worst, std::abs(fast.objective - slow.objective) / std::max(slow.objective, 1e-300));
      ++noisy_cases;

      const LseSolution clean = lse_exhaustive(observe_noiseless(s, truth), perms);
      ++noiseless_cases;
      if (clean.objective > kNoiselessObjective || tau_loss(s, clean.perm, truth) != 0) ++noiseless_bad;
    }
  }
  return {worst <= kLseRelTolerance && noiseless_bad == 0,
          std::to_string(noisy_cases) + " noisy instances, max relative objective gap " + fmt("%.2e", worst) +
              "; " + std::to_string(noiseless_cases) + " noiseless, " + std::to_string(noiseless_bad) +
              " with nonzero objective or loss"};
}

Outcome distance_bounds() {
  bool ok = true;
  std::string detail;
  struct Case {
    Index n, d;
    double delta;
  };
  for (const Case c : {Case{9, 2, 1.0}, Case{12, 3, 1.0}, Case{48, 10, 0.5}}) {
    const LowerBoundReport r = verify_lower_bound_packing(c.n, c.delta, c.d, 100);
    ok = ok && r.passed;
    detail += "packing(" + std::to_string(c.n) + "," + std::to_string(c.d) + "): " +
              fmt("%.4g", r.predicted_low) + " <= " + fmt("%.4g", r.measured_rho_star) + " <= " +
              fmt("%.4g", r.predicted_high) + "; ";
  }
  double worst = 0.0;
  for (Index n : {8, 16, 32}) {
    for (double lambda : {1.0, 3.0}) {
      ok = ok && verify_quarter_swap(n, lambda).passed;
      const double expected = quarter_swap_column_value(n, lambda);
      for (double v : quarter_swap_column_norms(n, lambda)) worst = std::max(worst, std::abs(v - expected) / expected);
    }
  }
  ok = ok && worst <= 1e-9;
  detail += "quarter swap max column error " + fmt("%.2e", worst);
  return {ok, detail};
}

struct Pair {
  Transition as, ss;
};

Pair transitions(const ExperimentGrid& g) {
  const auto results = run_grid(g, RunOptions{1});
  return {transition_sigma(results, Estimator::AS), transition_sigma(results, Estimator::SS)};
}

std::string describe(int setting, const Pair& t) {
  return "s" + std::to_string(setting) + " AS " + fmt("%.4g", t.as.sigma) + " (pos " + fmt("%.2f", t.as.position) +
         ") SS " + fmt("%.4g", t.ss.sigma) + " (pos " + fmt("%.2f", t.ss.position) + ")";
}

Outcome transition_ordering() {
  bool ok = true;
  std::string detail;
  for (int setting = 1; setting <= 6; ++setting) {
    const ExperimentGrid g = load("setting" + std::to_string(setting) + "_n100.json");
    const bool shape = g.n == 100 && g.replicates == 50 && g.family == NoiseFamily::Gaussian;
    const Pair t = transitions(g);
    const bool found = t.as.found && t.ss.found;
    const bool ordered = setting == 3 ? t.ss.position >= t.as.position - kTransitionSlack
                                      : t.as.position >= t.ss.position - kTransitionSlack;
    ok = ok && shape && found && ordered;
    detail += describe(setting, t) + (ordered && found ? "" : " [violated]") + "; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome laplace_robustness() {
  const ExperimentGrid g = load("setting1_n100_laplace.json");
  const Pair t = transitions(g);
  const bool ok = g.family == NoiseFamily::Laplace && g.replicates == 50 && t.as.found && t.ss.found &&
                  t.as.position >= t.ss.position - kTransitionSlack;
  return {ok, describe(1, t)};
}

Outcome scaling_degradation() {
  const ExperimentGrid small = load("setting1_n100_as.json");
  const ExperimentGrid large = load("setting1_n400_as.json");
  const Transition a = transition_sigma(run_grid(small, RunOptions{1}), Estimator::AS);
  const Transition b = transition_sigma(run_grid(large, RunOptions{1}), Estimator::AS);
  const bool ok = small.n == 100 && large.n == 400 && small.replicates == 30 && large.replicates == 30 &&
                  a.found && b.found && b.sigma <= a.sigma;
  return {ok, "AS n=100 " + fmt("%.4g", a.sigma) + ", n=400 " + fmt("%.4g", b.sigma)};
}

Outcome determinism() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"smoke.json", "lse_n6.json"}) {
    const ExperimentGrid g = load(name);
    const std::string first = csv_of(run_grid(g, RunOptions{1}));
    const std::string second = csv_of(run_grid(g, RunOptions{1}));
    const std::string threaded = csv_of(run_grid(g, RunOptions{4}));
    const bool same = first == second && first == threaded;
    ok = ok && same;
    detail += std::string(name) + (same ? " identical" : " differs") + " across 2 runs and 1/4 threads; ";
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

// ---------------------------------------------------------------------------

struct Tally {
  Index checks = 0;
  Index failures = 0;
  void expect(bool ok) {
    ++checks;
    if (!ok) ++failures;
  }
};

bool nonincreasing_nonnegative(const ToeplitzSignal& t) {
  for (std::size_t k = 1; k + 1 < t.theta.size(); ++k)
    if (t.theta[k] < t.theta[k + 1]) return false;
  return t.theta.back() >= 0.0;
}

Outcome invariants() {
  Tally group, equivariance, projection, classes, symmetry;

  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Index n = 3 + static_cast<Index>(seed % 12);
    const SymMatrixd a = draw_noise(n, NoiseSpec{NoiseFamily::Gaussian, 1.0, seed});
    const Permutation p = random_permutation(n, seed * 7);
    const Permutation q = random_permutation(n, seed * 13);
    group.expect(conjugate(a, compose(p, q)) == conjugate(conjugate(a, q), p));
    group.expect(conjugate(conjugate(a, p), p.inverse()) == a);
    group.expect(conjugate(a, Permutation::identity(n)) == a);
    group.expect(compose(p, q).inverse() == compose(q.inverse(), p.inverse()));
    symmetry.expect(a.dense() == a.dense().transpose());
    symmetry.expect(conjugate(a, p).dense() == conjugate(a, p).dense().transpose());
  }

  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Index n = 12 + static_cast<Index>(seed % 9);
    const SymMatrixd y =
        observe(make_setting(5, n), random_permutation(n, seed), NoiseSpec{NoiseFamily::Gaussian, 0.05, seed + 3}).y;
    const Permutation q = random_permutation(n, seed + 71);
    const SymMatrixd moved = conjugate(y, q);

    const ReorderResult as = adaptive_sort(y);
    if (std::get<SortingDiagnostics>(as.diagnostics).ties == 0)
      equivariance.expect(adaptive_sort(moved).perm == compose(q, as.perm));

    const ReorderResult ss = spectral_seriate(y);
    if (std::get<SpectralDiagnostics>(ss.diagnostics).distinct_components) {
      const Permutation expected = compose(q, ss.perm);
      const Permutation got = spectral_seriate(moved).perm;
      equivariance.expect(got == expected || got == expected.reversed());
    }
  }

  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 23);
    std::vector<double> w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = rng.uniform() * 8.0 - 4.0;
      w[i] = 0.05 + rng.uniform();
    }
    const auto fast = pava_nonincreasing(v, w);
    const auto slow = oracle::naive_pava(v, w);
    bool close = true;
    for (std::size_t i = 0; i < v.size(); ++i)
      close = close && std::abs(fast[i] - slow[i]) <= kPavaTolerance * (1.0 + std::abs(slow[i]));
    projection.expect(close);
    projection.expect(std::is_sorted(fast.rbegin(), fast.rend()));
  }
  ProjectionOptions ridge;
  ridge.enforce_ridge = true;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Index n = 4 + static_cast<Index>(seed % 10);
    const SymMatrixd m = draw_noise(n, NoiseSpec{NoiseFamily::Gaussian, 1.0, seed + 1000});
    const ToeplitzSignal plain = toeplitz_project(m);
    const ToeplitzSignal ridged = toeplitz_project(m, ridge);
    projection.expect(nonincreasing_nonnegative(plain));
    projection.expect(nonincreasing_nonnegative(ridged));
    projection.expect(check_class(ridged, 0.0).ridge_margin >= -kRidgeTolerance);
    const double id_res = conjugation_residual(m, Permutation::identity(n), plain);
    projection.expect(id_res <= conjugation_residual(m, Permutation::identity(n), ridged) + 1e-12);
    // Projecting a projection changes nothing.
    const ToeplitzSignal again = toeplitz_project(to_dense(plain));
    bool fixed = true;
    for (std::size_t k = 0; k < plain.theta.size(); ++k)
      fixed = fixed && std::abs(again.theta[k] - plain.theta[k]) <= 1e-12 * (1.0 + std::abs(plain.theta[k]));
    projection.expect(fixed);
  }

  for (Index n : {2, 3, 4, 5}) {
    ToeplitzSignal s{{0.0}};
    for (Index k = 1; k < n; ++k) s.theta.push_back(1.0 + 1.0 / static_cast<double>(k));
    const auto perms = all_permutations(n);
    for (const auto& p : perms) {
      for (const auto& q : perms) {
        const int loss = tau_loss(s, p, q);
        classes.expect(loss == tau_loss(s, q, p));
        classes.expect((loss == 0) == (q == p || q == p.reversed()));
      }
    }
  }

  const Tally* all[] = {&group, &equivariance, &projection, &classes, &symmetry};
  const char* names[] = {"group action", "equivariance", "projection", "tau classes", "symmetry"};
  Index failures = 0;
  std::string detail;
  for (std::size_t i = 0; i < 5; ++i) {
    failures += all[i]->failures;
    detail += std::string(names[i]) + " " + std::to_string(all[i]->checks - all[i]->failures) + "/" +
              std::to_string(all[i]->checks) + "; ";
  }
  detail.resize(detail.size() - 2);
  return {failures == 0 && equivariance.checks > 0, detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_configs = argv[1];

  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
    double limit;
  };
  const std::vector<Criterion> criteria{
      {1, "path Laplacian closed form", path_spectrum, kLimitLemma7},
      {2, "noiseless exactness", noiseless_exactness, kLimitNoiseless},
      {3, "LSE brute-force oracle", lse_oracle, kLimitLse},
      {4, "distance bounds", distance_bounds, kLimitBounds},
      {5, "transition ordering", transition_ordering, kLimitOrdering},
      {6, "Laplace robustness", laplace_robustness, kLimitLaplace},
      {7, "scaling degradation", scaling_degradation, kLimitScaling},
      {8, "determinism", determinism, 0.0},
      {9, "invariant suites", invariants, 0.0},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit > 0.0) o = with_limit(o, seconds, c.limit);
    if (!o.pass) ++failed;
    std::printf("criterion %d %s: %s (%s) [%.1f s]\n", c.id, c.name, o.pass ? "PASS" : "FAIL", o.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  return failed;
}
