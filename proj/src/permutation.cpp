// SPDX-License-Identifier: Apache-2.0
#include "seriation/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seriation/errors.hpp"

namespace seriation {

Permutation::Permutation(std::vector<Index> map) : map_(std::move(map)) {
  std::vector<char> seen(map_.size(), 0);
  for (Index v : map_) {
    if (v < 0 || v >= size() || seen[static_cast<std::size_t>(v)]) {
      throw InvalidInput("not a permutation of {0.." + std::to_string(size() - 1) + "}");
    }
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(Index n) {
  std::vector<Index> map(static_cast<std::size_t>(n));
  std::iota(map.begin(), map.end(), Index{0});
  return Permutation(std::move(map));
}

Permutation Permutation::from_one_based(std::span<const Index> images) {
  std::vector<Index> map(images.begin(), images.end());
  for (auto& v : map) --v;
  return Permutation(std::move(map));
}

Permutation Permutation::transposition(Index n, Index i, Index j) {
  auto p = identity(n).map_;
  std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  return Permutation(std::move(p));
}

std::vector<Index> Permutation::one_based() const {
  std::vector<Index> out(map_);
  for (auto& v : out) ++v;
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<Index> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) {
    inv[static_cast<std::size_t>(map_[i])] = static_cast<Index>(i);
  }
  Permutation out;
  out.map_ = std::move(inv);
  return out;
}

Permutation Permutation::reversed() const {
  Permutation out;
  out.map_.assign(map_.rbegin(), map_.rend());
  return out;
}

Permutation Permutation::complemented() const {
  Permutation out;
  out.map_ = map_;
  for (auto& v : out.map_) v = size() - 1 - v;
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != static_cast<Index>(i)) return false;
  }
  return true;
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw LengthMismatch("compose");
  std::vector<Index> out(static_cast<std::size_t>(p.size()));
  for (Index i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(i)] = p(q(i));
  return Permutation(std::move(out));
}

std::vector<Permutation> all_permutations(Index n) {
  if (n < 1 || n > 10) throw InvalidInput("all_permutations is limited to 1 <= n <= 10");
  std::vector<Index> cur(static_cast<std::size_t>(n));
  std::iota(cur.begin(), cur.end(), Index{0});
  std::vector<Permutation> out;
  do {
    out.emplace_back(cur);
  } while (std::next_permutation(cur.begin(), cur.end()));
  return out;
}

Permutation rank_vector(std::span<const double> x) {
  if (x.empty()) throw InvalidInput("rank_vector of an empty vector");
  for (double v : x) {
    if (std::isnan(v)) throw InvalidInput("rank_vector input contains NaN");
  }
  std::vector<Index> order(x.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return x[static_cast<std::size_t>(a)] < x[static_cast<std::size_t>(b)];
  });
  std::vector<Index> ranks(x.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    ranks[static_cast<std::size_t>(order[k])] = static_cast<Index>(k);
  }
  return Permutation(std::move(ranks));
}

Index hamming(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw LengthMismatch("hamming");
  Index d = 0;
  for (Index i = 0; i < p.size(); ++i) d += p(i) != q(i);
  return d;
}

double spearman_rho(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw LengthMismatch("spearman_rho");
  const Index n = p.size();
  if (n < 2) throw InvalidInput("spearman_rho needs n >= 2");
  // Both sequences hold 0..n-1 exactly once: equal means and variances.
  const double mean = 0.5 * static_cast<double>(n - 1);
  double cov = 0.0;
  double var = 0.0;
  for (Index i = 0; i < n; ++i) {
    const double a = static_cast<double>(p(i)) - mean;
    const double b = static_cast<double>(q(i)) - mean;
    cov += a * b;
    var += a * a;
  }
  return cov / var;
}

double spearman_up_to_reversal(const Permutation& p, const Permutation& q) {
  return std::max(spearman_rho(p, q), spearman_rho(p.complemented(), q));
}

std::vector<Index> packing_indices(Index n) {
  std::vector<Index> idx;
  for (Index k = 0; k < n / 3; ++k) idx.push_back(3 * k + 1);
  return idx;
}

namespace {

// Depth-first walk of S_m in lexicographic order. A branch is cut as soon as
// some accepted member can no longer be reached at distance >= d, so the
// first surviving leaf is exactly the next lexicographic candidate that a
// plain greedy scan would accept.
class GreedyPacker {
 public:
  GreedyPacker(Index m, Index d, Index budget) : m_(m), d_(d), budget_(budget) {
    prefix_.resize(static_cast<std::size_t>(m));
    used_.assign(static_cast<std::size_t>(m), 0);
  }

  std::vector<std::vector<Index>> run() {
    search(0);
    return accepted_;
  }

 private:
  bool done() const { return static_cast<Index>(accepted_.size()) >= budget_; }

  bool feasible(Index depth) const {
    const Index remaining = m_ - depth;
    for (const auto& q : accepted_) {
      Index mismatches = 0;
      for (Index t = 0; t < depth; ++t) {
        mismatches += prefix_[static_cast<std::size_t>(t)] != q[static_cast<std::size_t>(t)];
      }
      if (mismatches + remaining < d_) return false;
    }
    return true;
  }

  void search(Index depth) {
    if (done()) return;
    if (!feasible(depth)) return;
    if (depth == m_) {
      accepted_.push_back(prefix_);
      return;
    }
    for (Index v = 0; v < m_ && !done(); ++v) {
      if (used_[static_cast<std::size_t>(v)]) continue;
      used_[static_cast<std::size_t>(v)] = 1;
      prefix_[static_cast<std::size_t>(depth)] = v;
      search(depth + 1);
      used_[static_cast<std::size_t>(v)] = 0;
    }
  }

  Index m_;
  Index d_;
  Index budget_;
  std::vector<Index> prefix_;
  std::vector<char> used_;
  std::vector<std::vector<Index>> accepted_;
};

}  // namespace

PackingSet build_packing_set(Index n, Index d, Index budget) {
  if (n < 6) throw InfeasibleParameters("packing sets need n >= 6");
  const auto idx = packing_indices(n);
  const auto m = static_cast<Index>(idx.size());
  if (d < 2 || d > m) {
    throw InfeasibleParameters("d = " + std::to_string(d) + " outside [2, " + std::to_string(m) +
                               "] movable indices");
  }
  if (budget < 1) throw InfeasibleParameters("budget must be positive");

  PackingSet set{n, d, {}};
  for (const auto& sigma : GreedyPacker(m, d, budget).run()) {
    auto images = Permutation::identity(n).images();
    for (Index k = 0; k < m; ++k) {
      images[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] =
          idx[static_cast<std::size_t>(sigma[static_cast<std::size_t>(k)])];
    }
    set.perms.emplace_back(std::move(images));
  }
  return set;
}

bool verify_packing(const PackingSet& set) {
  for (std::size_t a = 0; a < set.perms.size(); ++a) {
    if (set.perms[a].size() != set.n) return false;
    for (std::size_t b = a + 1; b < set.perms.size(); ++b) {
      if (hamming(set.perms[a], set.perms[b]) < set.min_hamming) return false;
    }
  }
  return true;
}

double deza_ball_volume(Index n, Index d) {
  // sum_{k<=d} C(n,k) * D_k, D_k = k! sum_{x<=k} (-1)^x / x! being the number
  // of derangements of k items: D_0 = 1, D_1 = 0, D_k = (k-1)(D_{k-1} + D_{k-2}).
  const Index top = std::min(d, n);
  std::vector<double> derangements(static_cast<std::size_t>(std::max<Index>(top, 1)) + 1, 0.0);
  derangements[0] = 1.0;
  for (Index k = 2; k <= top; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    derangements[uk] = static_cast<double>(k - 1) * (derangements[uk - 1] + derangements[uk - 2]);
  }
  double volume = 0.0;
  double binom = 1.0;
  for (Index k = 0; k <= top; ++k) {
    volume += binom * derangements[static_cast<std::size_t>(k)];
    binom *= static_cast<double>(n - k) / static_cast<double>(k + 1);
  }
  return volume;
}

double deza_packing_floor(Index n, Index d) {
  return std::tgamma(static_cast<double>(n) + 1.0) / deza_ball_volume(n, d);
}

}  // namespace seriation
