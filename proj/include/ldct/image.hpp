// Canonical grayscale image type plus the normalization and resampling
// operations shared by every other module. Intensities are double precision
// in [0, 1]; pixels are stored row-major.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ldct/errors.hpp"

namespace ldct {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;  // size == width * height, row-major

  GrayImage() = default;
  GrayImage(int w, int h, double fill = 0.0)
      : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, fill) {
    if (w <= 0 || h <= 0) throw std::invalid_argument("GrayImage: dimensions must be positive");
  }

  double& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }

  std::size_t size() const { return pixels.size(); }

  bool same_shape(const GrayImage& other) const {
    return width == other.width && height == other.height;
  }
};

/// Throws if any pixel is non-finite or outside [0, 1].
inline void require_valid(const GrayImage& img) {
  if (img.width <= 0 || img.height <= 0 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw std::invalid_argument("GrayImage: inconsistent dimensions");
  }
  for (double v : img.pixels) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw std::invalid_argument("GrayImage: pixel outside [0,1] or non-finite");
    }
  }
}

/// Clamps every pixel into [0, 1]. Rejects NaN input. Idempotent.
inline GrayImage clip01(GrayImage img) {
  for (double& v : img.pixels) {
    if (std::isnan(v)) throw std::invalid_argument("clip01: NaN pixel");
    v = std::min(std::max(v, 0.0), 1.0);
  }
  return img;
}

namespace detail {

// a + t*(b-a): exact when a == b, so constant images survive resampling
// bit-identically.
inline double lerp_exact(double a, double b, double t) { return a + t * (b - a); }

}  // namespace detail

/// Bilinear resize using the half-pixel-center convention. Output values are
/// convex combinations of inputs, so the [0,1] range is preserved and a
/// same-size resize is an exact identity.
inline GrayImage resize_bilinear(const GrayImage& img, int w, int h) {
  if (w < 1 || h < 1) throw std::invalid_argument("resize_bilinear: target dims must be >= 1");
  if (img.width <= 0 || img.height <= 0) {
    throw std::invalid_argument("resize_bilinear: empty input image");
  }
  GrayImage out(w, h);
  const double sx = static_cast<double>(img.width) / w;
  const double sy = static_cast<double>(img.height) / h;
  for (int y = 0; y < h; ++y) {
    double src_y = (y + 0.5) * sy - 0.5;
    src_y = std::min(std::max(src_y, 0.0), static_cast<double>(img.height - 1));
    const int y0 = static_cast<int>(std::floor(src_y));
    const int y1 = std::min(y0 + 1, img.height - 1);
    const double fy = src_y - y0;
    for (int x = 0; x < w; ++x) {
      double src_x = (x + 0.5) * sx - 0.5;
      src_x = std::min(std::max(src_x, 0.0), static_cast<double>(img.width - 1));
      const int x0 = static_cast<int>(std::floor(src_x));
      const int x1 = std::min(x0 + 1, img.width - 1);
      const double fx = src_x - x0;
      const double top = detail::lerp_exact(img.at(x0, y0), img.at(x1, y0), fx);
      const double bot = detail::lerp_exact(img.at(x0, y1), img.at(x1, y1), fx);
      out.at(x, y) = detail::lerp_exact(top, bot, fy);
    }
  }
  return out;
}

}  // namespace ldct
