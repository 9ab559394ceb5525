// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace seriation {

using Index = Eigen::Index;

/// A bijection on {0, ..., n-1}.
///
/// Stored 0-based; `one_based()` gives the conventional 1-based images used
/// by every file format. When a permutation describes an ordering, entry k is
/// the index of the item placed at position k.
class Permutation {
 public:
  Permutation() = default;

  /// Throws InvalidInput unless `map` is a bijection on {0..n-1}.
  explicit Permutation(std::vector<Index> map);

  static Permutation identity(Index n);
  static Permutation from_one_based(std::span<const Index> images);
  /// Exchanges i and j (0-based) and fixes everything else.
  static Permutation transposition(Index n, Index i, Index j);

  Index size() const { return static_cast<Index>(map_.size()); }
  Index operator()(Index i) const { return map_[static_cast<std::size_t>(i)]; }
  const std::vector<Index>& images() const { return map_; }
  std::vector<Index> one_based() const;

  Permutation inverse() const;

  /// Images read backwards, p∘r with r(i) = n-1-i. For orderings this is the
  /// complete reversal, and it leaves Toeplitz conjugates unchanged.
  Permutation reversed() const;
  /// r∘p: every image i replaced by n-1-i.
  Permutation complemented() const;

  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  /// Lexicographic order on the image sequence.
  friend auto operator<=>(const Permutation& a, const Permutation& b) {
    return a.map_ <=> b.map_;
  }

 private:
  std::vector<Index> map_;
};

/// Composition (p∘q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);

/// Every permutation of {0..n-1} in lexicographic order. Guarded to n <= 10.
std::vector<Permutation> all_permutations(Index n);

/// Ranks of the components of `x` in increasing order, ties broken left to
/// right. Throws InvalidInput on NaN or empty input.
Permutation rank_vector(std::span<const double> x);

template <typename Derived>
Permutation rank_vector(const Eigen::DenseBase<Derived>& x) {
  const Eigen::VectorXd copy = x.derived().template cast<double>();
  return rank_vector(std::span<const double>(copy.data(), static_cast<std::size_t>(copy.size())));
}

/// Number of positions where the images differ.
Index hamming(const Permutation& p, const Permutation& q);

/// Pearson correlation of the two image sequences treated as rank vectors.
double spearman_rho(const Permutation& p, const Permutation& q);

/// max(rho(p, q), rho(complemented(p), q)). Rank vectors flip under
/// complementation, so this is the correlation modulo reversal.
double spearman_up_to_reversal(const Permutation& p, const Permutation& q);

/// A set of permutations with certified pairwise Hamming distance.
struct PackingSet {
  Index n = 0;
  Index min_hamming = 0;
  std::vector<Permutation> perms;
};

/// Indices moved by packing-set members: 1, 4, 7, ... (0-based), one per
/// block of three, floor(n/3) in total.
std::vector<Index> packing_indices(Index n);

/// Greedy lexicographic d-packing over permutations of `packing_indices(n)`
/// lifted to S_n. Stops after `budget` members or when the candidates run
/// out. Throws InfeasibleParameters unless 2 <= d <= floor(n/3) and n >= 6.
PackingSet build_packing_set(Index n, Index d, Index budget);

/// O(|S|^2 n) re-check of the pairwise distance certificate.
bool verify_packing(const PackingSet& set);

/// Deza's ball volume V_d = sum_{k<=d} C(n,k) k! sum_{x<=k} (-1)^x / x!.
double deza_ball_volume(Index n, Index d);

/// The packing floor n! / V_d.
double deza_packing_floor(Index n, Index d);

}  // namespace seriation
