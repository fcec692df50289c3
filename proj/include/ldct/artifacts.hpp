// Portable-CT acquisition artifacts: linear motion blur, concentric ring
// bands, and the five-level severity schedule that composes them with dose
// noise (dose -> motion -> ring).

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ldct/dose.hpp"
#include "ldct/image.hpp"
#include "ldct/rng.hpp"

namespace ldct {

struct MotionParams {
  int length_px = 1;      // odd, >= 1
  double angle_deg = 0.0; // in [0, 180)
};

struct RingParams {
  double alpha = 0.0;              // multiplicative strength, >= 0
  std::vector<double> band_radii;  // pixels from slice center
  std::vector<double> band_sigmas; // pixels, > 0
};

/// One row of the severity schedule. Levels run 1..5 with lambda
/// non-increasing and motion length / ring strength non-decreasing.
struct SeverityLevel {
  int level = 1;
  double lambda = 40.0;
  int motion_len = 3;
  double ring_alpha = 0.02;
};

/// Default schedule built from the published parameter sets
/// L in {3,5,7} and alpha in {0.02,0.05,0.10} with lambda in {40,20,10,5,1}.
inline std::vector<SeverityLevel> default_severity_table() {
  return {{1, 40.0, 3, 0.02},
          {2, 20.0, 3, 0.02},
          {3, 10.0, 5, 0.05},
          {4, 5.0, 5, 0.05},
          {5, 1.0, 7, 0.10}};
}

/// Checks joint monotonicity and value domains of a severity schedule.
inline void validate_severity_table(const std::vector<SeverityLevel>& table) {
  if (table.empty()) throw validation_error("severity table: empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& s = table[i];
    if (s.level != static_cast<int>(i) + 1) {
      throw validation_error("severity table: levels must be 1..N in order");
    }
    if (!(s.lambda > 0.0)) throw validation_error("severity table: lambda must be > 0");
    if (s.motion_len < 1 || s.motion_len % 2 == 0) {
      throw validation_error("severity table: motion_len must be odd and >= 1");
    }
    if (s.ring_alpha < 0.0 || s.ring_alpha >= 1.0) {
      throw validation_error("severity table: ring_alpha must be in [0,1)");
    }
    if (i > 0) {
      if (s.lambda > table[i - 1].lambda ||
          s.motion_len < table[i - 1].motion_len ||
          s.ring_alpha < table[i - 1].ring_alpha) {
        throw validation_error("severity table: must be jointly monotone in level");
      }
    }
  }
}

inline SeverityLevel resolve_severity(const std::vector<SeverityLevel>& table, int level) {
  for (const auto& s : table) {
    if (s.level == level) return s;
  }
  throw validation_error("severity level " + std::to_string(level) + " not in schedule");
}

/// Builds the L x L linear motion kernel: L unit-spaced points along the
/// angle-theta line through the kernel center, each splatted bilinearly with
/// weight 1/L, then normalized to sum exactly 1.
inline std::vector<double> motion_kernel(MotionParams params) {
  if (params.length_px < 1 || params.length_px % 2 == 0) {
    throw std::invalid_argument("motion_kernel: length must be odd and >= 1");
  }
  if (params.angle_deg < 0.0 || params.angle_deg >= 180.0) {
    throw std::invalid_argument("motion_kernel: angle must be in [0,180)");
  }
  const int L = params.length_px;
  std::vector<double> k(static_cast<std::size_t>(L) * L, 0.0);
  if (L == 1) {
    k[0] = 1.0;
    return k;
  }
  const double c = (L - 1) / 2.0;
  const double th = params.angle_deg * M_PI / 180.0;
  const double dx = std::cos(th);
  const double dy = std::sin(th);
  const double w = 1.0 / L;
  for (int t = -(L / 2); t <= L / 2; ++t) {
    const double x = c + t * dx;
    const double y = c + t * dy;
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0;
    const double fy = y - y0;
    const double wx[2] = {1.0 - fx, fx};
    const double wy[2] = {1.0 - fy, fy};
    for (int j = 0; j < 2; ++j) {
      for (int i = 0; i < 2; ++i) {
        const double ww = wx[i] * wy[j];
        if (ww == 0.0) continue;
        k[static_cast<std::size_t>(y0 + j) * L + (x0 + i)] += w * ww;
      }
    }
  }
  double sum = 0.0;
  for (double v : k) sum += v;
  for (double& v : k) v /= sum;
  return k;
}

namespace detail {

// Mirror reflection about the edge pixels (no edge duplication):
// -1 -> 1, n -> n-2.
inline int mirror_index(int i, int n) {
  if (n == 1) return 0;
  const int period = 2 * (n - 1);
  i = std::abs(i) % period;
  return i < n ? i : period - i;
}

}  // namespace detail

/// 2-D filtering with the motion kernel under mirror boundary padding.
/// The kernel is symmetric under 180-degree rotation, so correlation and
/// convolution coincide.
inline GrayImage motion_blur(const GrayImage& img, MotionParams params) {
  const int L = params.length_px;
  if (L > img.width || L > img.height) {
    throw std::invalid_argument("motion_blur: kernel larger than image");
  }
  const std::vector<double> k = motion_kernel(params);
  if (L == 1) return img;
  GrayImage out(img.width, img.height);
  const int r = L / 2;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int j = -r; j <= r; ++j) {
        const int yy = detail::mirror_index(y + j, img.height);
        for (int i = -r; i <= r; ++i) {
          const double kv = k[static_cast<std::size_t>(j + r) * L + (i + r)];
          if (kv == 0.0) continue;
          acc += kv * img.at(detail::mirror_index(x + i, img.width), yy);
        }
      }
      out.at(x, y) = std::min(std::max(acc, 0.0), 1.0);
    }
  }
  return out;
}

/// Samples ring-band placement for an image: 3..8 bands at radii uniform on
/// [0, half-diagonal] with widths uniform on [1,3] px. Deterministic per
/// seed; reuse the returned params to apply the same rings again.
inline RingParams sample_ring_params(double alpha, int width, int height, SeedSpec seed) {
  if (alpha < 0.0) throw std::invalid_argument("sample_ring_params: alpha must be >= 0");
  CounterRng rng{seed.master_seed, seed.stream_index, stream_tag::kRing};
  RingParams p;
  p.alpha = alpha;
  const std::uint64_t n_bands = 3 + rng.bounded(6);  // uniform on {3,...,8}
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  const double half_diag = std::sqrt(cx * cx + cy * cy);
  for (std::uint64_t i = 0; i < n_bands; ++i) {
    p.band_radii.push_back(rng.uniform(0.0, half_diag));
    p.band_sigmas.push_back(rng.uniform(1.0, 3.0));
  }
  return p;
}

/// Superimposes concentric Gaussian bands: out = clip01(in * (1 + alpha*s(r)))
/// where s(r) is the band sum normalized so its maximum over the image is 1.
inline GrayImage ring_artifact(const GrayImage& img, const RingParams& params) {
  if (params.alpha < 0.0) throw std::invalid_argument("ring_artifact: alpha must be >= 0");
  if (params.band_radii.size() != params.band_sigmas.size()) {
    throw std::invalid_argument("ring_artifact: radii/sigma lists differ in length");
  }
  for (double s : params.band_sigmas) {
    if (!(s > 0.0)) throw std::invalid_argument("ring_artifact: sigmas must be > 0");
  }
  if (params.alpha == 0.0 || params.band_radii.empty()) return img;

  const double cx = (img.width - 1) / 2.0;
  const double cy = (img.height - 1) / 2.0;
  std::vector<double> s_field(img.pixels.size());
  double s_max = 0.0;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      const double r = std::hypot(x - cx, y - cy);
      double s = 0.0;
      for (std::size_t b = 0; b < params.band_radii.size(); ++b) {
        const double d = r - params.band_radii[b];
        const double sg = params.band_sigmas[b];
        s += std::exp(-d * d / (2.0 * sg * sg));
      }
      s_field[static_cast<std::size_t>(y) * img.width + x] = s;
      s_max = std::max(s_max, s);
    }
  }
  GrayImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const double v = img.pixels[i] * (1.0 + params.alpha * (s_field[i] / s_max));
    out.pixels[i] = std::min(std::max(v, 0.0), 1.0);
  }
  return out;
}

/// Applies one severity level: dose noise, then motion blur with a per-image
/// random angle, then ring bands. The motion angle and ring placement streams
/// do not depend on the level, so matched seeds give paired corruptions
/// across severities and across evaluated pipelines.
inline GrayImage apply_severity(const GrayImage& img, const SeverityLevel& sev, SeedSpec seed) {
  GrayImage x = simulate_low_dose(img, DoseLevel{sev.lambda}, seed);
  CounterRng motion_rng{seed.master_seed, seed.stream_index, stream_tag::kMotion};
  const double theta = motion_rng.uniform(0.0, 180.0);
  x = motion_blur(x, MotionParams{sev.motion_len, theta});
  const RingParams rings = sample_ring_params(sev.ring_alpha, img.width, img.height, seed);
  return ring_artifact(x, rings);
}

/// The corruption applied to an image before it reaches a classifier:
/// nothing, pure dose noise, or a full severity level.
struct CorruptionSpec {
  enum class Kind { clean, dose, severity };
  Kind kind = Kind::clean;
  DoseLevel dose{1.0};
  SeverityLevel severity{};

  static CorruptionSpec none() { return {}; }
  static CorruptionSpec at_dose(double lambda) {
    CorruptionSpec c;
    c.kind = Kind::dose;
    c.dose = DoseLevel{lambda};
    return c;
  }
  static CorruptionSpec at_severity(const SeverityLevel& sev) {
    CorruptionSpec c;
    c.kind = Kind::severity;
    c.severity = sev;
    return c;
  }
};

inline GrayImage apply_corruption(const GrayImage& img, const CorruptionSpec& spec, SeedSpec seed) {
  switch (spec.kind) {
    case CorruptionSpec::Kind::clean:
      return img;
    case CorruptionSpec::Kind::dose:
      return simulate_low_dose(img, spec.dose, seed);
    case CorruptionSpec::Kind::severity:
      return apply_severity(img, spec.severity, seed);
  }
  throw std::logic_error("apply_corruption: bad kind");
}

}  // namespace ldct
