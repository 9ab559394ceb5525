// SPDX-License-Identifier: Apache-2.0
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace seriation::oracle {

std::vector<double> naive_pava(std::vector<double> values, std::vector<double> weights) {
  // Groups of consecutive positions sharing one fitted value.
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < values.size(); ++i) groups.push_back({i});
  auto level = [&](const std::vector<std::size_t>& g) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i : g) {
      num += weights[i] * values[i];
      den += weights[i];
    }
    return num / den;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
      if (level(groups[k]) < level(groups[k + 1])) {
        groups[k].insert(groups[k].end(), groups[k + 1].begin(), groups[k + 1].end());
        groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(k) + 1);
        changed = true;
        break;
      }
    }
  }
  std::vector<double> out(values.size());
  for (const auto& g : groups) {
    const double v = level(g);
    for (std::size_t i : g) out[i] = v;
  }
  return out;
}

NaiveLse naive_lse_single(const Matrix<double>& y, const std::vector<Index>& perm) {
  const Index n = y.rows();
  Matrix<double> p = Matrix<double>::Zero(n, n);
  for (Index i = 0; i < n; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1.0;

  Matrix<double> m = Matrix<double>::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      for (Index a = 0; a < n; ++a)
        for (Index b = 0; b < n; ++b) m(i, j) += p(a, i) * y(a, b) * p(b, j);

  std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
  std::vector<double> counts(static_cast<std::size_t>(n), 0.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto k = static_cast<std::size_t>(std::abs(i - j));
      sums[k] += m(i, j);
      counts[k] += 1.0;
    }
  }
  std::vector<double> means;
  std::vector<double> weights;
  for (std::size_t k = 1; k < sums.size(); ++k) {
    means.push_back(sums[k] / counts[k]);
    weights.push_back(counts[k]);
  }
  auto fitted = naive_pava(means, weights);

  NaiveLse out;
  out.perm = perm;
  out.theta.push_back(sums[0] / counts[0]);
  for (double v : fitted) out.theta.push_back(v < 0.0 ? 0.0 : v);

  Matrix<double> t(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) t(i, j) = out.theta[static_cast<std::size_t>(std::abs(i - j))];
  const Matrix<double> fit = p * t * p.transpose();
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out.objective += (y(i, j) - fit(i, j)) * (y(i, j) - fit(i, j));
  return out;
}

NaiveLse naive_lse(const Matrix<double>& y, double tie_tolerance) {
  std::vector<Index> perm(static_cast<std::size_t>(y.rows()));
  std::iota(perm.begin(), perm.end(), Index{0});
  NaiveLse best = naive_lse_single(y, perm);
  while (std::next_permutation(perm.begin(), perm.end())) {
    NaiveLse cand = naive_lse_single(y, perm);
    if (cand.objective < best.objective - tie_tolerance * std::max(1.0, std::abs(best.objective))) {
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace seriation::oracle
