// SPDX-License-Identifier: Apache-2.0
#include "seriation/noise.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>

#include "seriation/errors.hpp"

namespace seriation {

std::string to_string(NoiseFamily f) {
  return f == NoiseFamily::Gaussian ? "gaussian" : "laplace";
}

NoiseFamily parse_noise_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "gaussian") return NoiseFamily::Gaussian;
  if (lower == "laplace") return NoiseFamily::Laplace;
  throw InvalidInput("unknown noise family '" + std::string(name) + "'");
}

namespace {

class Sampler {
 public:
  Sampler(NoiseFamily family, double sigma, std::uint64_t seed)
      : family_(family), sigma_(sigma), rng_(seed) {}

  double operator()() {
    return family_ == NoiseFamily::Gaussian ? gaussian() : laplace();
  }

 private:
  // Box-Muller, both outputs used.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return sigma_ * spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(rng_.uniform()));
    const double angle = 2.0 * std::numbers::pi * rng_.uniform();
    spare_ = r * std::sin(angle);
    has_spare_ = true;
    return sigma_ * r * std::cos(angle);
  }

  double laplace() {
    const double c = rng_.uniform() - 0.5;
    const double magnitude = -sigma_ * std::log(1.0 - 2.0 * std::abs(c));
    return c < 0.0 ? -magnitude : magnitude;
  }

  NoiseFamily family_;
  double sigma_;
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace

SymMatrixd draw_noise(Index n, const NoiseSpec& spec) {
  if (n < 1) throw InvalidDimension("draw_noise needs n >= 1");
  if (!(spec.sigma > 0.0) || !std::isfinite(spec.sigma)) {
    throw InvalidInput("noise sigma must be positive and finite");
  }
  Sampler sample(spec.family, spec.sigma, spec.seed);
  Matrix<double> z(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) z(i, j) = sample();
  }
  return SymMatrixd(z);
}

SymMatrixd observe_noiseless(const ToeplitzSignal& s, const Permutation& p) {
  if (p.size() != s.size()) throw DimensionMismatch("observe: permutation size differs from signal");
  return conjugate(to_dense(s), p);
}

Observation observe(const ToeplitzSignal& s, const Permutation& p, const NoiseSpec& spec) {
  const SymMatrixd clean = observe_noiseless(s, p);
  const SymMatrixd z = draw_noise(s.size(), spec);
  return Observation{SymMatrixd(clean.dense() + z.dense()), p, spec};
}

namespace {

// Uniform integer in [0, bound) by Lemire's multiply-shift with rejection.
std::uint64_t bounded(SplitMix64& rng, std::uint32_t bound) {
  const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
  for (;;) {
    const std::uint64_t product = (rng() >> 32) * bound;
    if (static_cast<std::uint32_t>(product) >= threshold) return product >> 32;
  }
}

}  // namespace

Permutation random_permutation(Index n, std::uint64_t seed) {
  if (n < 1 || n > Index{1} << 31) throw InvalidDimension("random_permutation: n out of range");
  auto images = Permutation::identity(n).images();
  SplitMix64 rng(seed);
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(bounded(rng, static_cast<std::uint32_t>(i + 1)));
    std::swap(images[static_cast<std::size_t>(i)], images[static_cast<std::size_t>(j)]);
  }
  return Permutation(std::move(images));
}

}  // namespace seriation
