// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "seriation/errors.hpp"
#include "seriation/permutation.hpp"

namespace seriation {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Dense symmetric matrix. Construction mirrors the upper triangle, so
/// entry(i, j) == entry(j, i) holds bit for bit; instances are immutable.
template <typename Scalar>
class SymMatrix {
 public:
  using DenseType = Matrix<Scalar>;

  SymMatrix() = default;

  /// n x n zero matrix.
  explicit SymMatrix(Index n) : data_(DenseType::Zero(n, n)) {}

  /// Takes the upper triangle of `m` (diagonal included) and mirrors it.
  template <typename Derived>
  explicit SymMatrix(const Eigen::MatrixBase<Derived>& m) : data_(m) {
    if (data_.rows() != data_.cols()) {
      throw DimensionMismatch("SymMatrix needs a square matrix, got " +
                              std::to_string(data_.rows()) + "x" + std::to_string(data_.cols()));
    }
    data_.template triangularView<Eigen::StrictlyLower>() = data_.transpose();
  }

  Index size() const { return data_.rows(); }
  Scalar operator()(Index i, Index j) const { return data_(i, j); }
  const DenseType& dense() const { return data_; }
  Scalar frobenius_norm() const { return data_.norm(); }

  friend bool operator==(const SymMatrix& a, const SymMatrix& b) {
    return a.size() == b.size() && a.data_ == b.data_;
  }

 private:
  DenseType data_;
};

using SymMatrixd = SymMatrix<double>;

/// d_i = sum_j A(i, j), diagonal included.
template <typename Scalar>
Vector<Scalar> degree_operator(const SymMatrix<Scalar>& a) {
  return a.dense().rowwise().sum();
}

/// L = diag(degree_operator(A)) - A.
template <typename Scalar>
SymMatrix<Scalar> laplacian(const SymMatrix<Scalar>& a) {
  Matrix<Scalar> l = -a.dense();
  l.diagonal() += degree_operator(a);
  return SymMatrix<Scalar>(l);
}

template <typename Scalar>
Scalar frobenius_dist(const SymMatrix<Scalar>& a, const SymMatrix<Scalar>& b) {
  if (a.size() != b.size()) throw DimensionMismatch("frobenius_dist");
  return (a.dense() - b.dense()).norm();
}

/// Relabels rows and columns: output(p(i), p(j)) = A(i, j), i.e. P A P^T with
/// P e_i = e_{p(i)}.
template <typename Scalar>
SymMatrix<Scalar> conjugate(const SymMatrix<Scalar>& a, const Permutation& p) {
  const Index n = a.size();
  if (p.size() != n) throw DimensionMismatch("conjugate: permutation size differs from matrix");
  Matrix<Scalar> out(n, n);
  for (Index j = 0; j < n; ++j) {
    const Index pj = p(j);
    for (Index i = 0; i < n; ++i) out(p(i), pj) = a(i, j);
  }
  return SymMatrix<Scalar>(out);
}

}  // namespace seriation
