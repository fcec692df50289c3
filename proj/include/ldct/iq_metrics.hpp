// Image-quality metrics: MSE, PSNR (MAX_I = 1 for normalized images) and
// SSIM with the Wang et al. defaults (11x11 Gaussian window, sigma 1.5,
// K1 = 0.01, K2 = 0.03, dynamic range 1).

#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ldct/image.hpp"

namespace ldct {

/// psnr_db is disengaged exactly when mse == 0 (infinite PSNR), so report
/// aggregation can exclude those images explicitly instead of averaging a
/// sentinel.
struct IQResult {
  double mse = 0.0;
  std::optional<double> psnr_db;
  double ssim = 1.0;
};

inline double mse(const GrayImage& a, const GrayImage& b) {
  if (!a.same_shape(b)) throw std::invalid_argument("mse: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    const double d = a.pixels[i] - b.pixels[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.pixels.size());
}

/// 10*log10(1/MSE); disengaged optional marks the infinite (MSE = 0) case.
inline std::optional<double> psnr(const GrayImage& a, const GrayImage& b) {
  const double m = mse(a, b);
  if (m == 0.0) return std::nullopt;
  return 10.0 * std::log10(1.0 / m);
}

namespace detail {

inline std::vector<double> ssim_window(int size, double sigma) {
  std::vector<double> g(size);
  const double c = (size - 1) / 2.0;
  double sum = 0.0;
  for (int i = 0; i < size; ++i) {
    g[i] = std::exp(-(i - c) * (i - c) / (2.0 * sigma * sigma));
    sum += g[i];
  }
  for (double& v : g) v /= sum;
  return g;
}

// Separable weighted filtering, valid mode: output is
// (w - size + 1) x (h - size + 1).
inline std::vector<double> filter_valid(const std::vector<double>& img, int w, int h,
                                        const std::vector<double>& g) {
  const int size = static_cast<int>(g.size());
  const int ow = w - size + 1;
  const int oh = h - size + 1;
  std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < size; ++i) acc += g[i] * img[static_cast<std::size_t>(y) * w + x + i];
      tmp[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < size; ++i) acc += g[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace detail

/// Mean local SSIM over all fully-interior 11x11 windows, Gaussian-weighted
/// moments. Symmetric in its arguments; 1.0 for identical images.
inline double ssim(const GrayImage& a, const GrayImage& b) {
  constexpr int kWin = 11;
  constexpr double kSigma = 1.5;
  constexpr double kC1 = 0.01 * 0.01;  // (K1 * L)^2 with L = 1
  constexpr double kC2 = 0.03 * 0.03;
  if (!a.same_shape(b)) throw std::invalid_argument("ssim: dimension mismatch");
  if (a.width < kWin || a.height < kWin) {
    throw std::invalid_argument("ssim: image smaller than 11x11 window");
  }

  const std::vector<double> g = detail::ssim_window(kWin, kSigma);
  const int w = a.width, h = a.height;

  std::vector<double> aa(a.pixels.size()), bb(a.pixels.size()), ab(a.pixels.size());
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    aa[i] = a.pixels[i] * a.pixels[i];
    bb[i] = b.pixels[i] * b.pixels[i];
    ab[i] = a.pixels[i] * b.pixels[i];
  }
  const auto mu_a = detail::filter_valid(a.pixels, w, h, g);
  const auto mu_b = detail::filter_valid(b.pixels, w, h, g);
  const auto m_aa = detail::filter_valid(aa, w, h, g);
  const auto m_bb = detail::filter_valid(bb, w, h, g);
  const auto m_ab = detail::filter_valid(ab, w, h, g);

  double acc = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i], mb = mu_b[i];
    const double va = m_aa[i] - ma * ma;
    const double vb = m_bb[i] - mb * mb;
    const double cab = m_ab[i] - ma * mb;
    acc += ((2.0 * ma * mb + kC1) * (2.0 * cab + kC2)) /
           ((ma * ma + mb * mb + kC1) * (va + vb + kC2));
  }
  return acc / static_cast<double>(mu_a.size());
}

inline IQResult compute_iq(const GrayImage& reference, const GrayImage& test) {
  IQResult r;
  r.mse = mse(reference, test);
  r.psnr_db = psnr(reference, test);
  r.ssim = ssim(reference, test);
  return r;
}

}  // namespace ldct
