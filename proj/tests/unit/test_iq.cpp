#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ldct/iq_metrics.hpp"
#include "ldct/rng.hpp"
#include "support/oracles.hpp"

using ldct::GrayImage;

namespace {

GrayImage random_image(int w, int h, std::uint64_t seed) {
  ldct::CounterRng rng{seed, 0};
  GrayImage img(w, h);
  for (double& v : img.pixels) v = rng.uniform01();
  return img;
}

}  // namespace

TEST_CASE("mse basics") {
  const GrayImage a(4, 4, 0.0);
  const GrayImage b(4, 4, 0.5);
  CHECK(ldct::mse(a, a) == 0.0);
  CHECK(ldct::mse(a, b) == Catch::Approx(0.25).margin(1e-15));
  CHECK_THROWS_AS(ldct::mse(a, GrayImage(3, 4, 0.0)), std::invalid_argument);
}

TEST_CASE("mse matches brute-force accumulation") {
  const GrayImage a = random_image(9, 7, 1);
  const GrayImage b = random_image(9, 7, 2);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.pixels.size(); ++i) {
    acc += (a.pixels[i] - b.pixels[i]) * (a.pixels[i] - b.pixels[i]);
  }
  CHECK(ldct::mse(a, b) == Catch::Approx(acc / a.pixels.size()).margin(1e-12));
}

TEST_CASE("psnr analytic values and infinity marker") {
  const GrayImage a(4, 4, 0.0);
  const GrayImage half(4, 4, 0.5);
  CHECK_FALSE(ldct::psnr(a, a).has_value());  // infinite PSNR marker
  CHECK(*ldct::psnr(a, half) == Catch::Approx(6.0205999132796239).margin(1e-9));
  const GrayImage centi(4, 4, 0.01);  // MSE 1e-4
  CHECK(*ldct::psnr(a, centi) == Catch::Approx(40.0).margin(1e-9));
}

TEST_CASE("psnr decreases as noise variance increases") {
  GrayImage ramp(32, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) ramp.at(x, y) = 0.2 + 0.6 * x / 31.0;
  }
  double prev = std::numeric_limits<double>::infinity();
  int level = 0;
  for (const double noise : {0.01, 0.03, 0.09}) {
    ldct::CounterRng rng{99, static_cast<std::uint64_t>(level++)};
    GrayImage noisy = ramp;
    for (double& v : noisy.pixels) {
      v = std::min(std::max(v + rng.uniform(-noise, noise), 0.0), 1.0);
    }
    const double p = *ldct::psnr(ramp, noisy);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("ssim of identical images is 1") {
  const GrayImage a = random_image(16, 16, 5);
  CHECK(ldct::ssim(a, a) == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("ssim constant images reduce to the luminance term") {
  const double mu_a = 0.2, mu_b = 0.7, c1 = 0.01 * 0.01;
  const GrayImage a(16, 16, mu_a);
  const GrayImage b(16, 16, mu_b);
  const double expected = (2.0 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1);
  CHECK(ldct::ssim(a, b) == Catch::Approx(expected).margin(1e-9));
}

TEST_CASE("ssim matches the direct-formula oracle on a random pair") {
  const GrayImage a = random_image(16, 16, 11);
  GrayImage b = a;
  ldct::CounterRng rng{12, 0};
  for (double& v : b.pixels) v = std::min(std::max(v + rng.uniform(-0.1, 0.1), 0.0), 1.0);
  CHECK(ldct::ssim(a, b) == Catch::Approx(oracle::ssim_direct(a, b)).margin(1e-9));
}

TEST_CASE("ssim is symmetric and respects flips applied to both images") {
  const GrayImage a = random_image(20, 14, 21);
  const GrayImage b = random_image(20, 14, 22);
  CHECK(ldct::ssim(a, b) == Catch::Approx(ldct::ssim(b, a)).margin(1e-12));

  auto flip_rows = [](const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (int y = 0; y < img.height; ++y) {
      for (int x = 0; x < img.width; ++x) out.at(x, y) = img.at(x, img.height - 1 - y);
    }
    return out;
  };
  CHECK(ldct::ssim(flip_rows(a), flip_rows(b)) == Catch::Approx(ldct::ssim(a, b)).margin(1e-12));
}

TEST_CASE("ssim rejects mismatched or undersized images") {
  const GrayImage a(16, 16, 0.5);
  CHECK_THROWS_AS(ldct::ssim(a, GrayImage(15, 16, 0.5)), std::invalid_argument);
  const GrayImage tiny(10, 10, 0.5);
  CHECK_THROWS_AS(ldct::ssim(tiny, tiny), std::invalid_argument);
}

TEST_CASE("compute_iq bundles all three metrics consistently") {
  const GrayImage a = random_image(16, 16, 31);
  const GrayImage b = random_image(16, 16, 32);
  const ldct::IQResult r = ldct::compute_iq(a, b);
  CHECK(r.mse == ldct::mse(a, b));
  CHECK(*r.psnr_db == *ldct::psnr(a, b));
  CHECK(r.ssim == ldct::ssim(a, b));
  const ldct::IQResult self = ldct::compute_iq(a, a);
  CHECK(self.mse == 0.0);
  CHECK_FALSE(self.psnr_db.has_value());
  CHECK(self.ssim == Catch::Approx(1.0).margin(1e-9));
}
