// A deterministic head-like test phantom: skull ring, cosine-shaded brain
// parenchyma, two dark ventricles and one bright lesion. Used by the bench
// command, the sample programs and the test suites as a natural image stand-in.

#pragma once

#include <cmath>

#include "ldct/image.hpp"

namespace ldct {

inline GrayImage make_phantom(int width = 128, int height = 128) {
  GrayImage img(width, height);
  const double cx = (width - 1) / 2.0;
  const double cy = (height - 1) / 2.0;
  const double scale = std::min(width, height) / 2.0;

  struct Blob {
    double ox, oy, radius, value;
  };
  const Blob blobs[] = {{-0.18, -0.05, 0.16, 0.25},
                        {0.18, -0.05, 0.16, 0.25},
                        {0.10, 0.30, 0.08, 0.75}};

  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const double r = std::hypot(x - cx, y - cy) / scale;
      double v = 0.0;
      if (r < 0.82) {
        v = 0.45 + 0.15 * std::cos(3.0 * (x - cx) / width * M_PI);
      } else if (r < 0.95) {
        v = 0.9;  // skull
      }
      for (const Blob& b : blobs) {
        const double d = std::hypot(x - cx - b.ox * scale, y - cy - b.oy * scale) / scale;
        if (d < b.radius) v = b.value;
      }
      img.at(x, y) = std::min(std::max(v, 0.0), 1.0);
    }
  }
  return img;
}

}  // namespace ldct
