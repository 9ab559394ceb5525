// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "seriation/permutation.hpp"
#include "seriation/sym_matrix.hpp"

namespace seriation::oracle {

struct NaiveLse {
  std::vector<Index> perm;  // 0-based images
  std::vector<double> theta;
  double objective = 0.0;
};

// Pool adjacent violators by repeated full passes, nonincreasing.
std::vector<double> naive_pava(std::vector<double> values, std::vector<double> weights);

// Objective of one candidate, built with an explicit permutation matrix.
NaiveLse naive_lse_single(const Matrix<double>& y, const std::vector<Index>& perm);

// Walks S_n with std::next_permutation; ties keep the first (smallest) image.
NaiveLse naive_lse(const Matrix<double>& y, double tie_tolerance);

}  // namespace seriation::oracle
