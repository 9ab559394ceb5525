// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "seriation/sym_matrix.hpp"

namespace seriation {

/// Full spectral decomposition: values ascending, vectors.col(k) paired with
/// values(k).
template <typename Scalar>
struct EigenPairs {
  Vector<Scalar> values;
  Matrix<Scalar> vectors;
};

struct EigenOptions {
  double tolerance = 1e-10;
  /// QL sweeps allowed per eigenvalue.
  int max_sweeps = 64;
  /// Verify ||A v - lambda v|| <= tolerance (1 + |lambda|) ||A||_F afterwards.
  bool check_residuals = true;
};

namespace detail {

// Householder reduction to tridiagonal form, accumulating the transform in v
// (EISPACK tred2). On exit d holds the diagonal and e the subdiagonal in
// e(1..n-1).
template <typename Scalar>
void tridiagonalize(Matrix<Scalar>& v, Vector<Scalar>& d, Vector<Scalar>& e) {
  using std::abs;
  using std::sqrt;
  const Index n = v.rows();
  d = v.row(n - 1).transpose();
  e.setZero(n);

  for (Index i = n - 1; i > 0; --i) {
    Scalar scale(0);
    Scalar h(0);
    for (Index k = 0; k < i; ++k) scale += abs(d(k));
    if (scale == Scalar(0)) {
      e(i) = d(i - 1);
      for (Index j = 0; j < i; ++j) {
        d(j) = v(i - 1, j);
        v(i, j) = Scalar(0);
        v(j, i) = Scalar(0);
      }
    } else {
      for (Index k = 0; k < i; ++k) {
        d(k) /= scale;
        h += d(k) * d(k);
      }
      Scalar f = d(i - 1);
      Scalar g = sqrt(h);
      if (f > Scalar(0)) g = -g;
      e(i) = scale * g;
      h -= f * g;
      d(i - 1) = f - g;
      for (Index j = 0; j < i; ++j) e(j) = Scalar(0);

      for (Index j = 0; j < i; ++j) {
        f = d(j);
        v(j, i) = f;
        g = e(j) + v(j, j) * f;
        for (Index k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d(k);
          e(k) += v(k, j) * f;
        }
        e(j) = g;
      }
      f = Scalar(0);
      for (Index j = 0; j < i; ++j) {
        e(j) /= h;
        f += e(j) * d(j);
      }
      const Scalar hh = f / (h + h);
      for (Index j = 0; j < i; ++j) e(j) -= hh * d(j);
      for (Index j = 0; j < i; ++j) {
        f = d(j);
        g = e(j);
        for (Index k = j; k <= i - 1; ++k) v(k, j) -= (f * e(k) + g * d(k));
        d(j) = v(i - 1, j);
        v(i, j) = Scalar(0);
      }
    }
    d(i) = h;
  }

  for (Index i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = Scalar(1);
    const Scalar h = d(i + 1);
    if (h != Scalar(0)) {
      for (Index k = 0; k <= i; ++k) d(k) = v(k, i + 1) / h;
      for (Index j = 0; j <= i; ++j) {
        Scalar g(0);
        for (Index k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (Index k = 0; k <= i; ++k) v(k, j) -= g * d(k);
      }
    }
    for (Index k = 0; k <= i; ++k) v(k, i + 1) = Scalar(0);
  }
  for (Index j = 0; j < n; ++j) {
    d(j) = v(n - 1, j);
    v(n - 1, j) = Scalar(0);
  }
  v(n - 1, n - 1) = Scalar(1);
  e(0) = Scalar(0);
}

// Implicit-shift QL on the tridiagonal (d, e), rotating the columns of v
// (EISPACK tql2). Throws ConvergenceFailure when an eigenvalue needs more
// than max_sweeps iterations.
template <typename Scalar>
void tridiagonal_ql(Vector<Scalar>& d, Vector<Scalar>& e, Matrix<Scalar>& v, int max_sweeps) {
  using std::abs;
  using std::hypot;
  const Index n = d.size();
  for (Index i = 1; i < n; ++i) e(i - 1) = e(i);
  e(n - 1) = Scalar(0);

  Scalar f(0);
  Scalar tst1(0);
  const Scalar eps = std::numeric_limits<Scalar>::epsilon();
  for (Index l = 0; l < n; ++l) {
    tst1 = std::max(tst1, abs(d(l)) + abs(e(l)));
    Index m = l;
    while (m < n) {
      if (abs(e(m)) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int sweeps = 0;
      do {
        if (++sweeps > max_sweeps) {
          throw ConvergenceFailure("eigenvalue " + std::to_string(l) + " not converged after " +
                                   std::to_string(max_sweeps) + " QL sweeps");
        }
        Scalar g = d(l);
        Scalar p = (d(l + 1) - g) / (Scalar(2) * e(l));
        Scalar r = hypot(p, Scalar(1));
        if (p < Scalar(0)) r = -r;
        d(l) = e(l) / (p + r);
        d(l + 1) = e(l) * (p + r);
        const Scalar dl1 = d(l + 1);
        Scalar h = g - d(l);
        for (Index i = l + 2; i < n; ++i) d(i) -= h;
        f += h;

        p = d(m);
        Scalar c(1);
        Scalar c2 = c;
        Scalar c3 = c;
        const Scalar el1 = e(l + 1);
        Scalar s(0);
        Scalar s2(0);
        for (Index i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e(i);
          h = c * p;
          r = hypot(p, e(i));
          e(i + 1) = s * r;
          s = e(i) / r;
          c = p / r;
          p = c * d(i) - s * g;
          d(i + 1) = h + s * (c * g + s * d(i));
          for (Index k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e(l) / dl1;
        e(l) = s * p;
        d(l) = c * p;
      } while (abs(e(l)) > eps * tst1);
    }
    d(l) += f;
    e(l) = Scalar(0);
  }
}

}  // namespace detail

/// Symmetric eigendecomposition by Householder tridiagonalization followed by
/// implicit-shift QL. Deterministic: no random starts, stable ascending sort,
/// and every eigenvector is signed so that its largest-magnitude component is
/// positive (lowest index wins ties).
///
/// @code
///   auto pairs = seriation::eigen_sym(seriation::laplacian(a));
///   Vector<double> fiedler = pairs.vectors.col(1);
/// @endcode
template <typename Scalar>
EigenPairs<Scalar> eigen_sym(const SymMatrix<Scalar>& a, const EigenOptions& options = {}) {
  using std::abs;
  const Index n = a.size();
  EigenPairs<Scalar> out;
  if (n == 0) return out;

  Matrix<Scalar> v = a.dense();
  Vector<Scalar> d;
  Vector<Scalar> e;
  if (n == 1) {
    d = v.diagonal();
    v.setOnes();
  } else {
    detail::tridiagonalize(v, d, e);
    detail::tridiagonal_ql(d, e, v, options.max_sweeps);
  }

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) { return d(x) < d(y); });

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.values(k) = d(src);
    auto col = out.vectors.col(k);
    col = v.col(src);
    col.normalize();
    // Components equal in magnitude up to rounding count as tied.
    const Scalar peak = col.cwiseAbs().maxCoeff();
    const Scalar slack = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * peak;
    Index pivot = 0;
    while (abs(col(pivot)) < peak - slack) ++pivot;
    if (col(pivot) < Scalar(0)) col = -col;
  }

  if (options.check_residuals) {
    const Scalar scale = a.frobenius_norm();
    const Matrix<Scalar> residual = a.dense() * out.vectors - out.vectors * out.values.asDiagonal();
    for (Index k = 0; k < n; ++k) {
      const Scalar bound = Scalar(options.tolerance) * (Scalar(1) + abs(out.values(k))) * scale;
      if (residual.col(k).norm() > bound) {
        throw ConvergenceFailure("residual of eigenpair " + std::to_string(k) +
                                 " exceeds tolerance");
      }
    }
  }
  return out;
}

}  // namespace seriation
