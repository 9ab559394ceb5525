// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>
#include <vector>

#include "seriation/errors.hpp"
#include "seriation/estimators.hpp"

namespace seriation {

double reduced_row_distance(const SymMatrixd& y, Index a, Index b, RowAlignment alignment) {
  const Index n = y.size();
  const auto& m = y.dense();
  double total = 0.0;
  if (alignment == RowAlignment::CommonSupport) {
    for (Index k = 0; k < n; ++k) {
      if (k == a || k == b) continue;
      total += std::abs(m(k, a) - m(k, b));
    }
    return total;
  }
  // Position t of the reduced row r skips index r.
  for (Index t = 0; t + 1 < n; ++t) {
    const Index ka = t < a ? t : t + 1;
    const Index kb = t < b ? t : t + 1;
    total += std::abs(m(ka, a) - m(kb, b));
  }
  return total;
}

namespace {

struct Argmin {
  Index best = -1;
  double value = std::numeric_limits<double>::infinity();
  double runner_up = std::numeric_limits<double>::infinity();
  bool tie = false;

  void offer(Index i, double v) {
    if (v < value) {
      runner_up = value;
      value = v;
      best = i;
      tie = false;
    } else {
      if (v == value) tie = true;
      if (v < runner_up) runner_up = v;
    }
  }

  double margin() const { return std::isfinite(runner_up) ? runner_up - value : 0.0; }
};

}  // namespace

ReorderResult adaptive_sort(const SymMatrixd& y, const AdaptiveSortOptions& options) {
  const Index n = y.size();
  if (n < 1) throw InvalidDimension("adaptive_sort needs a nonempty matrix");
  const auto& m = y.dense();
  const double sign = options.direction == SortDirection::Decreasing ? 1.0 : -1.0;

  SortingDiagnostics diag;
  Argmin start;
  for (Index i = 0; i < n; ++i) start.offer(i, sign * (m.col(i).sum() - m(i, i)));
  diag.start = start.best;
  diag.start_margin = start.margin();
  diag.ties += start.tie;

  std::vector<Index> order{start.best};
  order.reserve(static_cast<std::size_t>(n));
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[static_cast<std::size_t>(start.best)] = 1;

  double min_margin = std::numeric_limits<double>::infinity();
  while (static_cast<Index>(order.size()) < n) {
    const Index last = order.back();
    Argmin step;
    for (Index j = 0; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      step.offer(j, reduced_row_distance(y, last, j, options.alignment));
    }
    if (std::isfinite(step.runner_up)) min_margin = std::min(min_margin, step.margin());
    diag.ties += step.tie;
    used[static_cast<std::size_t>(step.best)] = 1;
    order.push_back(step.best);
  }
  diag.min_step_margin = std::isfinite(min_margin) ? min_margin : 0.0;
  return ReorderResult{Permutation(std::move(order)), diag};
}

}  // namespace seriation
