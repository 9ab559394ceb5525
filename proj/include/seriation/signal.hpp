// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <vector>

#include "seriation/permutation.hpp"
#include "seriation/sym_matrix.hpp"

namespace seriation {

/// Symmetric Toeplitz matrix given by its diagonal values theta_0..theta_{n-1}.
/// Any vector is accepted; class membership is a separate predicate.
struct ToeplitzSignal {
  std::vector<double> theta;

  Index size() const { return static_cast<Index>(theta.size()); }
  friend bool operator==(const ToeplitzSignal&, const ToeplitzSignal&) = default;
};

/// Membership report for the ridged monotone class and its lambda-ridged
/// subclass. theta_0 is never inspected.
struct ClassReport {
  bool in_T_n = false;
  bool in_T_R_lambda = false;
  /// (theta_1 - theta_c) - (theta_c - theta_{n-1}) with c = ceil(n/2).
  double ridge_margin = 0.0;
  /// theta_1 - theta_c.
  double lambda_value = 0.0;
};

/// entry(i, j) = theta_{|i-j|}.
SymMatrixd to_dense(const ToeplitzSignal& s);

/// Monotone, nonnegative, ridge and lambda-ridge checks. The ridge and lambda
/// comparisons allow 1e-12 relative slack for signals built from formulas.
ClassReport check_class(const ToeplitzSignal& s, double lambda);

/// The six benchmark signals. Settings 1 and 2 keep the band widths 10 and 40,
/// capped at n-1. theta_0 = theta_1 + 1 so heatmaps show the ridge.
/// Throws UnknownSetting outside 1..6, InvalidDimension for n < 2.
ToeplitzSignal make_setting(int setting, Index n);

/// Path adjacency: theta_1 = delta, everything else 0.
ToeplitzSignal make_tridiagonal(Index n, double delta);

/// theta_0 = 0, theta_k = alpha + (n-k) beta with beta = lambda / (n/2 - 1).
/// Throws InvalidDimension unless 4 | n.
ToeplitzSignal make_linear_family(Index n, double alpha, double lambda);

ToeplitzSignal scaled(const ToeplitzSignal& s, double factor);

/// Entrywise tolerance under which two conjugated signals count as equal.
inline constexpr double kTauTolerance = 1e-12;

/// 0 when p and q produce the same conjugated signal, 1 otherwise.
int tau_loss(const ToeplitzSignal& s, const Permutation& p, const Permutation& q);

/// Returned by rho when every pair of S is tau-equivalent.
inline constexpr double kNoDistinguishablePair = std::numeric_limits<double>::infinity();

/// Largest |S|^2 rho will scan.
inline constexpr double kMaxRhoPairs = 1e7;

/// Smallest Frobenius distance between distinguishable conjugates of `s` over
/// the permutations in S.
double rho(const ToeplitzSignal& s, const std::vector<Permutation>& perms);

/// min over signals of rho.
double rho_star(const std::vector<ToeplitzSignal>& signals, const std::vector<Permutation>& perms);

/// The quarter-swap permutation (n, ..., 3n/4+1, n/4+1, ..., 3n/4, n/4, ..., 1).
Permutation quarter_swap(Index n);

}  // namespace seriation
