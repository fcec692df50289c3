// Train-only augmentation: random rotation, horizontal/vertical flips and
// translation, resampled bilinearly with mirror fill. Deterministic per
// (config seed, item seed); evaluation code paths never call this.

#pragma once

#include <cmath>
#include <stdexcept>

#include "ldct/image.hpp"
#include "ldct/rng.hpp"

namespace ldct {

struct AugmentConfig {
  double rotate_deg_max = 15.0;
  double flip_h_prob = 0.5;
  double flip_v_prob = 0.5;
  double translate_frac_max = 0.10;
  SeedSpec seed;
};

inline void validate_augment_config(const AugmentConfig& cfg) {
  if (cfg.rotate_deg_max < 0.0) throw std::invalid_argument("augment: rotate_deg_max must be >= 0");
  if (cfg.flip_h_prob < 0.0 || cfg.flip_h_prob > 1.0 || cfg.flip_v_prob < 0.0 ||
      cfg.flip_v_prob > 1.0) {
    throw std::invalid_argument("augment: flip probabilities must be in [0,1]");
  }
  if (cfg.translate_frac_max < 0.0 || cfg.translate_frac_max >= 1.0) {
    throw std::invalid_argument("augment: translate_frac_max must be in [0,1)");
  }
}

namespace detail {

// Mirror fold of a continuous coordinate into [0, n-1].
inline double mirror_coord(double t, int n) {
  if (n == 1) return 0.0;
  const double period = 2.0 * (n - 1);
  t = std::fmod(std::abs(t), period);
  return t <= n - 1 ? t : period - t;
}

inline double sample_mirror_bilinear(const GrayImage& img, double x, double y) {
  x = mirror_coord(x, img.width);
  y = mirror_coord(y, img.height);
  const int x0 = std::min(static_cast<int>(std::floor(x)), img.width - 1);
  const int y0 = std::min(static_cast<int>(std::floor(y)), img.height - 1);
  const int x1 = std::min(x0 + 1, img.width - 1);
  const int y1 = std::min(y0 + 1, img.height - 1);
  const double fx = x - x0;
  const double fy = y - y0;
  const double top = lerp_exact(img.at(x0, y0), img.at(x1, y0), fx);
  const double bot = lerp_exact(img.at(x0, y1), img.at(x1, y1), fx);
  return lerp_exact(top, bot, fy);
}

}  // namespace detail

/// Rotates by angle_deg about the image center, then translates by
/// (tx, ty) pixels, with bilinear resampling and mirror fill. Zero
/// parameters return the input bit-identically.
inline GrayImage warp_rotate_translate(const GrayImage& img, double angle_deg, double tx,
                                       double ty) {
  if (angle_deg == 0.0 && tx == 0.0 && ty == 0.0) return img;
  const double th = angle_deg * M_PI / 180.0;
  const double c = std::cos(th);
  const double s = std::sin(th);
  const double cx = (img.width - 1) / 2.0;
  const double cy = (img.height - 1) / 2.0;
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      // Inverse map: undo translation, then rotate back about the center.
      const double ux = x - tx - cx;
      const double uy = y - ty - cy;
      const double sx = c * ux + s * uy + cx;
      const double sy = -s * ux + c * uy + cy;
      out.at(x, y) = detail::sample_mirror_bilinear(img, sx, sy);
    }
  }
  return out;
}

inline GrayImage flip_horizontal(const GrayImage& img) {
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) out.at(x, y) = img.at(img.width - 1 - x, y);
  }
  return out;
}

inline GrayImage flip_vertical(const GrayImage& img) {
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) out.at(x, y) = img.at(x, img.height - 1 - y);
  }
  return out;
}

/// One random augmentation draw. The parameter stream is keyed by
/// (cfg.seed, item_seed), so the same item always augments the same way.
/// Draw order: angle, flip_h, flip_v, tx, ty.
inline GrayImage augment(const GrayImage& img, const AugmentConfig& cfg, std::uint64_t item_seed) {
  validate_augment_config(cfg);
  CounterRng rng{cfg.seed.master_seed, cfg.seed.stream_index, stream_tag::kAugment, item_seed};
  const double angle = rng.uniform(-cfg.rotate_deg_max, cfg.rotate_deg_max);
  const bool fh = rng.uniform01() < cfg.flip_h_prob;
  const bool fv = rng.uniform01() < cfg.flip_v_prob;
  const double tx = rng.uniform(-cfg.translate_frac_max, cfg.translate_frac_max) * img.width;
  const double ty = rng.uniform(-cfg.translate_frac_max, cfg.translate_frac_max) * img.height;

  GrayImage out = warp_rotate_translate(img, angle, tx, ty);
  if (fh) out = flip_horizontal(out);
  if (fv) out = flip_vertical(out);
  return out;
}

}  // namespace ldct
