// SPDX-License-Identifier: Apache-2.0
#include "seriation/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seriation/errors.hpp"

namespace seriation {

SymMatrixd to_dense(const ToeplitzSignal& s) {
  const Index n = s.size();
  Matrix<double> m(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) m(i, j) = s.theta[static_cast<std::size_t>(std::abs(i - j))];
  }
  return SymMatrixd(m);
}

ClassReport check_class(const ToeplitzSignal& s, double lambda) {
  ClassReport report;
  const Index n = s.size();
  if (n < 2) return report;
  const auto& t = s.theta;
  const auto c = static_cast<std::size_t>((n + 1) / 2);
  const auto last = static_cast<std::size_t>(n - 1);

  bool monotone = t[last] >= 0.0;
  for (std::size_t k = 1; k < last; ++k) monotone = monotone && t[k] >= t[k + 1];

  report.lambda_value = t[1] - t[c];
  report.ridge_margin = report.lambda_value - (t[c] - t[last]);

  double scale = 1.0;
  for (std::size_t k = 1; k <= last; ++k) scale = std::max(scale, std::abs(t[k]));
  const double slack = 1e-12 * scale;

  report.in_T_n = monotone && report.ridge_margin >= -slack;
  report.in_T_R_lambda =
      report.in_T_n && report.lambda_value >= lambda - slack * std::max(1.0, std::abs(lambda));
  return report;
}

ToeplitzSignal make_setting(int setting, Index n) {
  if (setting < 1 || setting > 6) throw UnknownSetting("setting " + std::to_string(setting));
  if (n < 2) throw InvalidDimension("settings need n >= 2");
  std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
  const double nd = static_cast<double>(n);
  for (Index i = 1; i < n; ++i) {
    const double id = static_cast<double>(i);
    double v = 0.0;
    switch (setting) {
      case 1: v = i <= 10 ? 2.0 : 0.0; break;
      case 2: v = i <= 40 ? 2.0 : 0.0; break;
      case 3: v = 5.0 + 0.02 * (nd - id); break;
      case 4: v = std::pow((nd - id) * 0.02, 3); break;
      case 5: v = 1.0 / (1.0 + 0.02 * id); break;
      case 6: v = std::pow(1.0 + 0.02 * id, -2); break;
    }
    theta[static_cast<std::size_t>(i)] = v;
  }
  theta[0] = theta[1] + 1.0;
  return ToeplitzSignal{std::move(theta)};
}

ToeplitzSignal make_tridiagonal(Index n, double delta) {
  if (n < 2) throw InvalidDimension("tridiagonal signal needs n >= 2");
  if (!(delta > 0.0)) throw InvalidInput("tridiagonal signal needs delta > 0");
  std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
  theta[1] = delta;
  return ToeplitzSignal{std::move(theta)};
}

ToeplitzSignal make_linear_family(Index n, double alpha, double lambda) {
  if (n < 4 || n % 4 != 0) throw InvalidDimension("linear family needs 4 | n, got " + std::to_string(n));
  if (!(lambda > 0.0)) throw InvalidInput("linear family needs lambda > 0");
  if (alpha < 0.0) throw InvalidInput("linear family needs alpha >= 0");
  const double beta = lambda / (static_cast<double>(n) / 2.0 - 1.0);
  std::vector<double> theta(static_cast<std::size_t>(n), 0.0);
  for (Index k = 1; k < n; ++k) {
    theta[static_cast<std::size_t>(k)] = alpha + static_cast<double>(n - k) * beta;
  }
  return ToeplitzSignal{std::move(theta)};
}

ToeplitzSignal scaled(const ToeplitzSignal& s, double factor) {
  ToeplitzSignal out = s;
  for (auto& v : out.theta) v *= factor;
  return out;
}

namespace {

// Max entrywise gap between conjugate(T, p) and conjugate(T, q), computed as
// the gap between T and its relabeling by p^{-1}∘q without forming either.
double conjugate_gap(const ToeplitzSignal& s, const Permutation& p, const Permutation& q) {
  const Index n = s.size();
  const Permutation r = compose(p.inverse(), q);
  double gap = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double a = s.theta[static_cast<std::size_t>(std::abs(r(i) - r(j)))];
      const double b = s.theta[static_cast<std::size_t>(j - i)];
      gap = std::max(gap, std::abs(a - b));
    }
  }
  return gap;
}

}  // namespace

int tau_loss(const ToeplitzSignal& s, const Permutation& p, const Permutation& q) {
  if (p.size() != s.size() || q.size() != s.size()) throw DimensionMismatch("tau_loss");
  return conjugate_gap(s, p, q) <= kTauTolerance ? 0 : 1;
}

double rho(const ToeplitzSignal& s, const std::vector<Permutation>& perms) {
  if (perms.size() < 2) throw InvalidInput("rho needs at least two permutations");
  const double count = static_cast<double>(perms.size());
  if (count * count > kMaxRhoPairs) throw TooManyPairs(std::to_string(perms.size()) + " permutations");
  for (const auto& p : perms) {
    if (p.size() != s.size()) throw DimensionMismatch("rho");
  }

  const SymMatrixd base = to_dense(s);
  std::vector<SymMatrixd> conjugates;
  conjugates.reserve(perms.size());
  for (const auto& p : perms) conjugates.push_back(conjugate(base, p));

  double best = kNoDistinguishablePair;
  for (std::size_t a = 0; a < conjugates.size(); ++a) {
    for (std::size_t b = a + 1; b < conjugates.size(); ++b) {
      const Matrix<double> diff = conjugates[a].dense() - conjugates[b].dense();
      if (diff.cwiseAbs().maxCoeff() <= kTauTolerance) continue;
      best = std::min(best, diff.norm());
    }
  }
  return best;
}

double rho_star(const std::vector<ToeplitzSignal>& signals, const std::vector<Permutation>& perms) {
  if (signals.empty()) throw InvalidInput("rho_star needs at least one signal");
  double best = kNoDistinguishablePair;
  for (const auto& s : signals) best = std::min(best, rho(s, perms));
  return best;
}

Permutation quarter_swap(Index n) {
  if (n < 4 || n % 4 != 0) throw InvalidDimension("quarter swap needs 4 | n");
  const Index q = n / 4;
  std::vector<Index> images(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    images[static_cast<std::size_t>(i)] = (i < q || i >= n - q) ? n - 1 - i : i;
  }
  return Permutation(std::move(images));
}

}  // namespace seriation
