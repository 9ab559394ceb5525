// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "seriation/errors.hpp"
#include "seriation/estimators.hpp"

namespace seriation {

SymMatrixd seriation_laplacian(const SymMatrixd& y, const SpectralOptions& options) {
  if (!options.normalized) return laplacian(y);

  const Index n = y.size();
  const Vector<double> degree = degree_operator(y);
  const double eps = options.eps_degree >= 0.0
                         ? options.eps_degree
                         : 1e-8 * y.frobenius_norm() / static_cast<double>(n);
  for (Index i = 0; i < n; ++i) {
    if (!(std::abs(degree(i)) >= eps) || degree(i) == 0.0) {
      throw DegenerateDegree("row " + std::to_string(i + 1) + " has degree " +
                             std::to_string(degree(i)));
    }
  }
  Matrix<double> l = -(degree.cwiseInverse().asDiagonal() * y.dense());
  l.diagonal().array() += 1.0;
  return SymMatrixd(Matrix<double>(0.5 * (l + l.transpose())));
}

ReorderResult spectral_seriate(const SymMatrixd& y, const SpectralOptions& options) {
  const Index n = y.size();
  if (n < 2) throw InvalidDimension("spectral_seriate needs n >= 2");

  const SymMatrixd l = seriation_laplacian(y, options);
  const EigenPairs<double> pairs = eigen_sym(l, options.eigen);
  const Vector<double> fiedler = pairs.vectors.col(1);

  SpectralDiagnostics diag;
  diag.fiedler_value = pairs.values(1);
  diag.spectral_gap = n >= 3 ? pairs.values(2) - pairs.values(1) : 0.0;
  diag.degenerate =
      n >= 3 && diag.spectral_gap <= 1e-9 * std::max(1.0, l.frobenius_norm());

  std::vector<double> sorted(fiedler.data(), fiedler.data() + n);
  std::sort(sorted.begin(), sorted.end());
  diag.min_component_gap = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < sorted.size(); ++k) {
    diag.min_component_gap = std::min(diag.min_component_gap, sorted[k] - sorted[k - 1]);
  }
  diag.distinct_components = diag.min_component_gap > kComponentTolerance;

  return ReorderResult{rank_vector(fiedler).inverse(), diag};
}

}  // namespace seriation
