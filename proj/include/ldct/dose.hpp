// Low-dose CT simulation: per-pixel Poisson photon statistics at a dose
// scaling factor lambda. Each output pixel is Poisson(lambda * I) / lambda,
// clamped to [0, 1]. Smaller lambda means fewer photons and more noise.

#pragma once

#include <cmath>
#include <stdexcept>

#include "ldct/image.hpp"
#include "ldct/rng.hpp"

namespace ldct {

struct DoseLevel {
  double lambda = 1.0;  // photon-count multiplier, > 0
};

/// Simulates a low-dose acquisition of `img` at dose `dose`.
///
/// Deterministic given `seed`: pixel i draws from an independent stream keyed
/// by (master_seed, stream_index, dose stage, i), so results do not depend on
/// evaluation order or parallelism. Zero pixels stay exactly zero.
inline GrayImage simulate_low_dose(const GrayImage& img, DoseLevel dose, SeedSpec seed) {
  if (!(dose.lambda > 0.0) || !std::isfinite(dose.lambda)) {
    throw std::invalid_argument("simulate_low_dose: lambda must be positive and finite");
  }
  GrayImage out(img.width, img.height);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    const double v = img.pixels[i];
    if (!std::isfinite(v)) throw std::invalid_argument("simulate_low_dose: non-finite pixel");
    if (v == 0.0) {
      out.pixels[i] = 0.0;
      continue;
    }
    CounterRng rng{seed.master_seed, seed.stream_index, stream_tag::kDose,
                   static_cast<std::uint64_t>(i)};
    const double sample = static_cast<double>(poisson_draw(dose.lambda * v, rng)) / dose.lambda;
    out.pixels[i] = std::min(std::max(sample, 0.0), 1.0);
  }
  return out;
}

}  // namespace ldct
