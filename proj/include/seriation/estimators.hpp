// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "seriation/eigen_sym.hpp"
#include "seriation/permutation.hpp"
#include "seriation/signal.hpp"
#include "seriation/sym_matrix.hpp"

namespace seriation {

// ---------------------------------------------------------------------------
// Diagnostics and results
// ---------------------------------------------------------------------------

struct SortingDiagnostics {
  Index start = 0;
  /// Gap between the best and runner-up row sums in the start step.
  double start_margin = 0.0;
  /// Smallest gap between best and runner-up distance over the chaining steps.
  double min_step_margin = 0.0;
  /// Number of argmin decisions that were exact ties.
  Index ties = 0;
};

struct SpectralDiagnostics {
  double fiedler_value = 0.0;
  /// lambda_3 - lambda_2 (0 when n < 3).
  double spectral_gap = 0.0;
  /// Smallest difference between two Fiedler components.
  double min_component_gap = 0.0;
  /// Fiedler components pairwise separated by more than kComponentTolerance.
  bool distinct_components = false;
  /// lambda_2 is numerically repeated, so the Fiedler vector is not unique.
  bool degenerate = false;
};

struct LseDiagnostics {
  double objective = 0.0;
  Index candidates = 0;
};

using Diagnostics = std::variant<SortingDiagnostics, SpectralDiagnostics, LseDiagnostics>;

/// perm(k) is the index of the item placed at position k.
struct ReorderResult {
  Permutation perm;
  Diagnostics diagnostics;
};

// ---------------------------------------------------------------------------
// Adaptive sorting
// ---------------------------------------------------------------------------

enum class RowAlignment {
  /// Compare rows a and b on the indices outside {a, b}.
  CommonSupport,
  /// Drop each row's own diagonal entry and compare the (n-1)-vectors by position.
  Positional,
};

enum class SortDirection {
  /// Similarity decays away from the diagonal; start from the smallest row sum.
  Decreasing,
  /// Similarity grows away from the diagonal; start from the largest row sum.
  Increasing,
};

struct AdaptiveSortOptions {
  RowAlignment alignment = RowAlignment::CommonSupport;
  SortDirection direction = SortDirection::Decreasing;
};

/// Locate an end of the ordering by its off-diagonal row sum, then repeatedly
/// append the unused row nearest in l1 distance to the last one placed.
/// Ties go to the lowest index.
ReorderResult adaptive_sort(const SymMatrixd& y, const AdaptiveSortOptions& options = {});

/// l1 distance between the reduced rows a and b under `alignment`.
double reduced_row_distance(const SymMatrixd& y, Index a, Index b, RowAlignment alignment);

// ---------------------------------------------------------------------------
// Spectral seriation
// ---------------------------------------------------------------------------

inline constexpr double kComponentTolerance = 1e-9;

struct SpectralOptions {
  /// Use L = I - D^{-1} Y (symmetrized) instead of L = D - Y.
  bool normalized = false;
  /// Smallest admissible |degree| on the normalized path. Negative selects
  /// 1e-8 ||Y||_F / n.
  double eps_degree = -1.0;
  EigenOptions eigen{};
};

/// Rank the entries of the eigenvector of the second-smallest Laplacian
/// eigenvalue and return the inverse of that ranking.
ReorderResult spectral_seriate(const SymMatrixd& y, const SpectralOptions& options = {});

/// The matrix whose eigenvectors spectral_seriate ranks.
SymMatrixd seriation_laplacian(const SymMatrixd& y, const SpectralOptions& options = {});

// ---------------------------------------------------------------------------
// Least squares over monotone Toeplitz signals
// ---------------------------------------------------------------------------

struct ProjectionOptions {
  /// Also impose theta_1 + theta_{n-1} >= 2 theta_{ceil(n/2)}.
  bool enforce_ridge = false;
};

/// Weighted isotonic regression onto nonincreasing sequences.
std::vector<double> pava_nonincreasing(const std::vector<double>& values,
                                       const std::vector<double>& weights);

/// Frobenius-nearest Toeplitz matrix with theta_1 >= ... >= theta_{n-1} >= 0
/// and a free main diagonal.
ToeplitzSignal toeplitz_project(const SymMatrixd& m, const ProjectionOptions& options = {});

/// ||Y - conjugate(to_dense(theta), p)||_F^2 without forming the conjugate.
double conjugation_residual(const SymMatrixd& y, const Permutation& p, const ToeplitzSignal& theta);

struct LseSolution {
  Permutation perm;
  ToeplitzSignal theta_hat;
  double objective = 0.0;
};

/// Upper limit on |S| * n^2 for the exhaustive searches.
inline constexpr double kLseBudget = 1e9;

/// Objectives closer than this (relative) are treated as tied; the
/// lexicographically smaller permutation then wins.
inline constexpr double kLseTieTolerance = 1e-12;

/// Minimize ||Y - P Theta P^T||_F^2 over P in S and Theta in the monotone cone.
LseSolution lse_exhaustive(const SymMatrixd& y, const std::vector<Permutation>& perms,
                           const ProjectionOptions& options = {});

/// Same search with Theta fixed to `known`.
LseSolution lse_known_signal(const SymMatrixd& y, const std::vector<Permutation>& perms,
                             const ToeplitzSignal& known);

// ---------------------------------------------------------------------------
// Presentation and dispatch
// ---------------------------------------------------------------------------

/// Picks whichever of perm and its reversal places the smaller index first.
ReorderResult canonicalize_up_to_reversal(const ReorderResult& r);

enum class Estimator { AS, SS, SSN, LSE };

std::string to_string(Estimator e);
/// Accepts as, ss, ssn, lse in any case.
Estimator parse_estimator(std::string_view name);

struct EstimatorOptions {
  AdaptiveSortOptions sorting{};
  SpectralOptions spectral{};
  ProjectionOptions projection{};
  /// Candidate set for LSE; empty means all of S_n (n <= 8).
  std::vector<Permutation> candidates{};
};

ReorderResult run_estimator(Estimator e, const SymMatrixd& y, const EstimatorOptions& options = {});

}  // namespace seriation
