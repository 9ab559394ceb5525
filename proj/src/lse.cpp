// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "seriation/errors.hpp"
#include "seriation/estimators.hpp"

namespace seriation {

std::vector<double> pava_nonincreasing(const std::vector<double>& values,
                                       const std::vector<double>& weights) {
  if (values.size() != weights.size()) throw LengthMismatch("pava: values and weights");
  struct Block {
    double mean;
    double weight;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(weights[i] > 0.0)) throw InvalidInput("pava weights must be positive");
    blocks.push_back({values[i], weights[i], 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean < blocks.back().mean) {
      const Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double w = prev.weight + top.weight;
      prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / w;
      prev.weight = w;
      prev.count += top.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.mean);
  return out;
}

namespace {

struct DiagonalMeans {
  double main = 0.0;
  std::vector<double> means;    // offsets 1..n-1
  std::vector<double> weights;  // 2 (n - k)
};

template <typename At>
DiagonalMeans diagonal_means(Index n, At at) {
  DiagonalMeans dm;
  for (Index i = 0; i < n; ++i) dm.main += at(i, i);
  dm.main /= static_cast<double>(n);
  for (Index k = 1; k < n; ++k) {
    double sum = 0.0;
    for (Index i = 0; i + k < n; ++i) sum += at(i, i + k);
    dm.means.push_back(sum / static_cast<double>(n - k));
    dm.weights.push_back(2.0 * static_cast<double>(n - k));
  }
  return dm;
}

std::vector<double> monotone_cone_projection(const std::vector<double>& v,
                                             const std::vector<double>& w) {
  auto out = pava_nonincreasing(v, w);
  for (auto& x : out) x = std::max(x, 0.0);
  return out;
}

// Dykstra's alternating projections in the w-weighted norm onto the
// intersection of the monotone cone and the ridge halfspace a . theta >= 0.
std::vector<double> ridged_projection(const std::vector<double>& m, const std::vector<double>& w) {
  const std::size_t len = m.size();
  const std::size_t n = len + 1;
  std::vector<double> a(len, 0.0);
  a[0] += 1.0;
  a[len - 1] += 1.0;
  a[(n + 1) / 2 - 1] -= 2.0;
  double a_norm = 0.0;
  for (std::size_t k = 0; k < len; ++k) a_norm += a[k] * a[k] / w[k];

  auto cone = monotone_cone_projection(m, w);
  if (a_norm == 0.0) return cone;

  auto halfspace = [&](std::vector<double> x) {
    double dot = 0.0;
    for (std::size_t k = 0; k < len; ++k) dot += a[k] * x[k];
    if (dot < 0.0) {
      for (std::size_t k = 0; k < len; ++k) x[k] -= dot / a_norm * a[k] / w[k];
    }
    return x;
  };

  double scale = 1.0;
  for (double v : m) scale = std::max(scale, std::abs(v));
  std::vector<double> x = m;
  std::vector<double> p(len, 0.0);
  std::vector<double> q(len, 0.0);
  std::vector<double> y = cone;
  for (int it = 0; it < 100000; ++it) {
    std::vector<double> xp(len);
    for (std::size_t k = 0; k < len; ++k) xp[k] = x[k] + p[k];
    y = monotone_cone_projection(xp, w);
    for (std::size_t k = 0; k < len; ++k) p[k] = xp[k] - y[k];

    std::vector<double> yq(len);
    for (std::size_t k = 0; k < len; ++k) yq[k] = y[k] + q[k];
    std::vector<double> next = halfspace(yq);
    for (std::size_t k = 0; k < len; ++k) q[k] = yq[k] - next[k];

    double change = 0.0;
    for (std::size_t k = 0; k < len; ++k) change = std::max(change, std::abs(next[k] - x[k]));
    x = std::move(next);
    if (change <= 1e-14 * scale) break;
  }
  return y;
}

}  // namespace

ToeplitzSignal toeplitz_project(const SymMatrixd& m, const ProjectionOptions& options) {
  const Index n = m.size();
  if (n < 2) throw InvalidDimension("toeplitz_project needs n >= 2");
  const auto dm = diagonal_means(n, [&](Index i, Index j) { return m(i, j); });
  const auto tail = options.enforce_ridge ? ridged_projection(dm.means, dm.weights)
                                          : monotone_cone_projection(dm.means, dm.weights);
  ToeplitzSignal out;
  out.theta.reserve(static_cast<std::size_t>(n));
  out.theta.push_back(dm.main);
  out.theta.insert(out.theta.end(), tail.begin(), tail.end());
  return out;
}

double conjugation_residual(const SymMatrixd& y, const Permutation& p, const ToeplitzSignal& theta) {
  const Index n = y.size();
  if (p.size() != n || theta.size() != n) throw DimensionMismatch("conjugation_residual");
  const auto& m = y.dense();
  double diag = 0.0;
  double off = 0.0;
  for (Index j = 0; j < n; ++j) {
    const Index pj = p(j);
    const double d = m(pj, pj) - theta.theta[0];
    diag += d * d;
    for (Index i = 0; i < j; ++i) {
      const double e = m(p(i), pj) - theta.theta[static_cast<std::size_t>(j - i)];
      off += e * e;
    }
  }
  return diag + 2.0 * off;
}

namespace {

void check_budget(Index n, std::size_t candidates) {
  if (candidates == 0) throw InvalidInput("LSE needs at least one candidate permutation");
  const double work = static_cast<double>(candidates) * static_cast<double>(n) * static_cast<double>(n);
  if (work > kLseBudget) {
    throw BudgetExceeded(std::to_string(candidates) + " candidates at n = " + std::to_string(n));
  }
}

bool improves(double objective, const Permutation& p, const LseSolution& best, bool have_best) {
  if (!have_best) return true;
  const double tol = kLseTieTolerance * std::max(1.0, std::abs(best.objective));
  if (objective < best.objective - tol) return true;
  if (objective > best.objective + tol) return false;
  return p < best.perm;
}

}  // namespace

LseSolution lse_exhaustive(const SymMatrixd& y, const std::vector<Permutation>& perms,
                           const ProjectionOptions& options) {
  const Index n = y.size();
  if (n < 2) throw InvalidDimension("lse_exhaustive needs n >= 2");
  check_budget(n, perms.size());
  const auto& m = y.dense();

  LseSolution best{Permutation::identity(n), {}, 0.0};
  bool have_best = false;
  for (const auto& p : perms) {
    if (p.size() != n) throw DimensionMismatch("lse_exhaustive: candidate size");
    const auto dm = diagonal_means(n, [&](Index i, Index j) { return m(p(i), p(j)); });
    const auto tail = options.enforce_ridge ? ridged_projection(dm.means, dm.weights)
                                            : monotone_cone_projection(dm.means, dm.weights);
    ToeplitzSignal theta;
    theta.theta.reserve(static_cast<std::size_t>(n));
    theta.theta.push_back(dm.main);
    theta.theta.insert(theta.theta.end(), tail.begin(), tail.end());
    const double objective = conjugation_residual(y, p, theta);
    if (improves(objective, p, best, have_best)) {
      best = LseSolution{p, std::move(theta), objective};
      have_best = true;
    }
  }
  return best;
}

LseSolution lse_known_signal(const SymMatrixd& y, const std::vector<Permutation>& perms,
                             const ToeplitzSignal& known) {
  const Index n = y.size();
  if (known.size() != n) throw DimensionMismatch("lse_known_signal: signal size");
  check_budget(n, perms.size());
  LseSolution best{Permutation::identity(n), known, 0.0};
  bool have_best = false;
  for (const auto& p : perms) {
    const double objective = conjugation_residual(y, p, known);
    if (improves(objective, p, best, have_best)) {
      best = LseSolution{p, known, objective};
      have_best = true;
    }
  }
  return best;
}

ReorderResult canonicalize_up_to_reversal(const ReorderResult& r) {
  if (r.perm.size() < 2) return r;
  const Permutation rev = r.perm.reversed();
  return rev(0) < r.perm(0) ? ReorderResult{rev, r.diagnostics} : r;
}

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::AS: return "AS";
    case Estimator::SS: return "SS";
    case Estimator::SSN: return "SSN";
    case Estimator::LSE: return "LSE";
  }
  return "?";
}

Estimator parse_estimator(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  if (upper == "AS") return Estimator::AS;
  if (upper == "SS") return Estimator::SS;
  if (upper == "SSN") return Estimator::SSN;
  if (upper == "LSE") return Estimator::LSE;
  throw InvalidInput("unknown estimator '" + std::string(name) + "'");
}

ReorderResult run_estimator(Estimator e, const SymMatrixd& y, const EstimatorOptions& options) {
  switch (e) {
    case Estimator::AS:
      return adaptive_sort(y, options.sorting);
    case Estimator::SS: {
      SpectralOptions spectral = options.spectral;
      spectral.normalized = false;
      return spectral_seriate(y, spectral);
    }
    case Estimator::SSN: {
      SpectralOptions spectral = options.spectral;
      spectral.normalized = true;
      return spectral_seriate(y, spectral);
    }
    case Estimator::LSE: {
      const Index n = y.size();
      if (options.candidates.empty() && n > 8) {
        throw BudgetExceeded("LSE over all of S_n is limited to n <= 8");
      }
      const auto& perms = options.candidates.empty() ? all_permutations(n) : options.candidates;
      const LseSolution sol = lse_exhaustive(y, perms, options.projection);
      return ReorderResult{sol.perm, LseDiagnostics{sol.objective, static_cast<Index>(perms.size())}};
    }
  }
  throw InvalidInput("unknown estimator");
}

}  // namespace seriation
