// Counter-based deterministic random number generation and Poisson sampling.
//
// Every stochastic stage in the harness derives an independent stream from
// (master_seed, stream_index, stage_tag, item...) words, so per-image or
// per-resample parallelism can never change results.

#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace ldct {

/// Identifies a reproducible random stream. Identical (master_seed,
/// stream_index) pairs always yield identical streams.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// FNV-1a hash of a string, used to derive stable per-id stream indices.
inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Deterministic splitmix64 generator keyed by an arbitrary word list.
/// Distinct key word sequences give statistically independent streams.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::initializer_list<std::uint64_t> key_words) {
    state_ = 0x853c49e6748fea9bULL;
    for (std::uint64_t w : key_words) {
      state_ = detail::mix64(state_ ^ (w + detail::kGolden));
    }
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += detail::kGolden);
    return detail::mix64(z);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased uniform integer in [0, n). Rejection on the wrap-around range.
  std::uint64_t bounded(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("CounterRng::bounded: n must be positive");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

// Stage tags keeping the per-purpose streams of one (seed, image) pair apart.
namespace stream_tag {
inline constexpr std::uint64_t kDose = 0x01;
inline constexpr std::uint64_t kMotion = 0x02;
inline constexpr std::uint64_t kRing = 0x03;
inline constexpr std::uint64_t kAugment = 0x04;
inline constexpr std::uint64_t kBootstrap = 0x05;
}  // namespace stream_tag

/// Poisson sample with the given mean.
///
/// Uses inversion by sequential search below mean 30 (exact and fast where
/// the dose model needs precision) and Hoermann's transformed rejection with
/// squeeze (PTRS) above, which samples the exact distribution at any mean.
template <class Rng>
std::uint64_t poisson_draw(double mean, Rng& rng) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("poisson_draw: mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0;

  if (mean < 30.0) {
    // Inversion by sequential search.
    const double u = rng.uniform01();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    // Cap guards against u landing in the rounded-away tail mass.
    const std::uint64_t cap = static_cast<std::uint64_t>(10.0 * mean + 100.0);
    while (u > cdf && k < cap) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
    }
    return k;
  }

  // PTRS transformed rejection (Hoermann 1993).
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = rng.uniform01() - 0.5;
    const double v = rng.uniform01();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::uint64_t>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        kf * loglam - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::uint64_t>(kf);
    }
  }
}

}  // namespace ldct
