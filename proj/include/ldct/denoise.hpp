// Classical denoisers for the denoise-then-classify baseline: identity,
// separable Gaussian blur, and patchwise non-local means.

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldct/artifacts.hpp"  // mirror_index
#include "ldct/image.hpp"

namespace ldct {

struct DenoiserSpec {
  enum class Kind { identity, gaussian, nlm };
  Kind kind = Kind::identity;
  double sigma = 1.0;  // gaussian
  int patch = 5;       // nlm, odd
  int window = 11;     // nlm, odd, >= patch
  double h = 0.1;      // nlm filtering strength

  static DenoiserSpec identity() { return {}; }
  static DenoiserSpec gaussian(double sigma) {
    DenoiserSpec s;
    s.kind = Kind::gaussian;
    s.sigma = sigma;
    return s;
  }
  static DenoiserSpec nlm(int patch, int window, double h) {
    DenoiserSpec s;
    s.kind = Kind::nlm;
    s.patch = patch;
    s.window = window;
    s.h = h;
    return s;
  }
};

namespace detail {

inline GrayImage gaussian_blur(const GrayImage& img, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("denoise: gaussian sigma must be > 0");
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> g(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    g[i + radius] = std::exp(-0.5 * i * i / (sigma * sigma));
    sum += g[i + radius];
  }
  for (double& v : g) v /= sum;

  GrayImage tmp(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += g[i + radius] * img.at(mirror_index(x + i, img.width), y);
      }
      tmp.at(x, y) = acc;
    }
  }
  GrayImage out(img.width, img.height);
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double acc = 0.0;
      for (int i = -radius; i <= radius; ++i) {
        acc += g[i + radius] * tmp.at(x, mirror_index(y + i, img.height));
      }
      out.at(x, y) = std::min(std::max(acc, 0.0), 1.0);
    }
  }
  return out;
}

inline GrayImage nlm_denoise(const GrayImage& img, int patch, int window, double h) {
  if (patch < 1 || patch % 2 == 0 || window < 1 || window % 2 == 0 || patch > window) {
    throw std::invalid_argument("denoise: nlm patch/window must be odd with patch <= window");
  }
  if (!(h > 0.0)) throw std::invalid_argument("denoise: nlm h must be > 0");
  if (window > img.width || window > img.height) {
    throw std::invalid_argument("denoise: nlm window larger than image");
  }
  const int pr = patch / 2;
  const int wr = window / 2;

  // Gaussian weighting over patch offsets, normalized to sum 1.
  std::vector<double> pw(static_cast<std::size_t>(patch) * patch);
  {
    const double ps = std::max(1.0, pr / 1.5);
    double sum = 0.0;
    for (int j = -pr; j <= pr; ++j) {
      for (int i = -pr; i <= pr; ++i) {
        const double v = std::exp(-0.5 * (i * i + j * j) / (ps * ps));
        pw[static_cast<std::size_t>(j + pr) * patch + (i + pr)] = v;
        sum += v;
      }
    }
    for (double& v : pw) v /= sum;
  }

  auto px = [&](int x, int y) {
    return img.at(mirror_index(x, img.width), mirror_index(y, img.height));
  };

  GrayImage out(img.width, img.height);
  const double h2 = h * h;
  for (int y = 0; y < img.height; ++y) {
    for (int x = 0; x < img.width; ++x) {
      double weight_sum = 0.0;
      double value_sum = 0.0;
      for (int wy = -wr; wy <= wr; ++wy) {
        for (int wx = -wr; wx <= wr; ++wx) {
          double dist2 = 0.0;
          for (int j = -pr; j <= pr; ++j) {
            for (int i = -pr; i <= pr; ++i) {
              const double d = px(x + i, y + j) - px(x + wx + i, y + wy + j);
              dist2 += pw[static_cast<std::size_t>(j + pr) * patch + (i + pr)] * d * d;
            }
          }
          const double w = std::exp(-dist2 / h2);
          weight_sum += w;
          value_sum += w * px(x + wx, y + wy);
        }
      }
      out.at(x, y) = std::min(std::max(value_sum / weight_sum, 0.0), 1.0);
    }
  }
  return out;
}

}  // namespace detail

/// Applies the configured denoiser. All kinds preserve constant images and
/// keep the output in [0, 1]; identity returns the input unchanged.
inline GrayImage denoise(const GrayImage& img, const DenoiserSpec& spec) {
  switch (spec.kind) {
    case DenoiserSpec::Kind::identity:
      return img;
    case DenoiserSpec::Kind::gaussian:
      return detail::gaussian_blur(img, spec.sigma);
    case DenoiserSpec::Kind::nlm:
      return detail::nlm_denoise(img, spec.patch, spec.window, spec.h);
  }
  throw std::logic_error("denoise: bad kind");
}

inline std::string denoiser_name(const DenoiserSpec& spec) {
  switch (spec.kind) {
    case DenoiserSpec::Kind::identity: return "identity";
    case DenoiserSpec::Kind::gaussian: return "gaussian";
    case DenoiserSpec::Kind::nlm: return "nlm";
  }
  return "?";
}

}  // namespace ldct
