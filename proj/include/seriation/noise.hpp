// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "seriation/permutation.hpp"
#include "seriation/signal.hpp"
#include "seriation/sym_matrix.hpp"

namespace seriation {

// SplitMix64 (Steele, Lea, Flood). Each experiment cell seeds its own
// instance from a derived key, so no generator state is ever shared.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0, 1): 53 random bits, centered in their cell.
  double uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// The SplitMix64 finalizer, used to fold key components together.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// FNV-1a, for turning stream tags ("perm", "noise") into key material.
constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Seed for one experiment cell's stream.
constexpr std::uint64_t stream_key(std::uint64_t base_seed, std::string_view tag, std::uint64_t setting,
                                   std::uint64_t sigma_index, std::uint64_t replicate) {
  std::uint64_t k = mix64(base_seed ^ fnv1a(tag));
  k = mix64(k + 0x9e3779b97f4a7c15ull * (setting + 1));
  k = mix64(k + 0x9e3779b97f4a7c15ull * (sigma_index + 1));
  k = mix64(k + 0x9e3779b97f4a7c15ull * (replicate + 1));
  return k;
}

enum class NoiseFamily { Gaussian, Laplace };

std::string to_string(NoiseFamily f);
// Accepts "gaussian" / "laplace" in any case; throws InvalidInput otherwise.
NoiseFamily parse_noise_family(std::string_view name);

// Gaussian: sigma is the standard deviation. Laplace: sigma is the scale b,
// so the variance is 2 b^2.
struct NoiseSpec {
  NoiseFamily family = NoiseFamily::Gaussian;
  double sigma = 1.0;
  std::uint64_t seed = 0;

  friend bool operator==(const NoiseSpec&, const NoiseSpec&) = default;
};

// Symmetric noise: the upper triangle (diagonal included) is filled row by
// row from a single stream seeded with spec.seed, then mirrored.
SymMatrixd draw_noise(Index n, const NoiseSpec& spec);

struct Observation {
  SymMatrixd y;
  Permutation truth;
  NoiseSpec noise;
};

// Y = conjugate(to_dense(s), p) + draw_noise(n, spec).
Observation observe(const ToeplitzSignal& s, const Permutation& p, const NoiseSpec& spec);

// Y = conjugate(to_dense(s), p) with no noise added.
SymMatrixd observe_noiseless(const ToeplitzSignal& s, const Permutation& p);

// Uniform draw from S_n by Fisher-Yates on a stream seeded with `seed`.
Permutation random_permutation(Index n, std::uint64_t seed);

}  // namespace seriation
