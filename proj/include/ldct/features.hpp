// Intensity features for the classical baseline: a 32-bin normalized
// histogram plus mean, SD and the 10th/50th/90th percentiles (37 features).

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ldct/image.hpp"
#include "ldct/rng.hpp"

namespace ldct {

inline constexpr int kHistogramBins = 32;
inline constexpr int kFeatureCount = kHistogramBins + 5;

struct FeatureVector {
  std::array<double, kFeatureCount> values{};
};

/// Stable identifier of the feature layout, stored with trained models so a
/// model is never scored against features it was not trained on.
inline std::uint64_t feature_schema_hash() {
  return fnv1a64("hist32+mean+sd+p10+p50+p90/v1");
}

namespace detail {

// Linear-interpolation percentile on sorted values (numpy default).
inline double sorted_percentile(const std::vector<double>& sorted, double pct) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = pct / 100.0 * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

inline FeatureVector extract_features(const GrayImage& img) {
  if (img.pixels.empty()) throw std::invalid_argument("extract_features: empty image");
  FeatureVector f;
  const double n = static_cast<double>(img.pixels.size());

  for (double v : img.pixels) {
    int b = static_cast<int>(std::floor(v * kHistogramBins));
    b = std::min(std::max(b, 0), kHistogramBins - 1);
    f.values[b] += 1.0;
  }
  for (int b = 0; b < kHistogramBins; ++b) f.values[b] /= n;

  double mean = 0.0;
  for (double v : img.pixels) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : img.pixels) var += (v - mean) * (v - mean);
  var /= n;

  std::vector<double> sorted(img.pixels);
  std::sort(sorted.begin(), sorted.end());

  f.values[kHistogramBins + 0] = mean;
  f.values[kHistogramBins + 1] = std::sqrt(var);
  f.values[kHistogramBins + 2] = detail::sorted_percentile(sorted, 10.0);
  f.values[kHistogramBins + 3] = detail::sorted_percentile(sorted, 50.0);
  f.values[kHistogramBins + 4] = detail::sorted_percentile(sorted, 90.0);
  return f;
}

}  // namespace ldct
