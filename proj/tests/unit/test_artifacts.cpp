#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ldct/artifacts.hpp"
#include "ldct/iq_metrics.hpp"
#include "ldct/phantom.hpp"
#include "support/oracles.hpp"

using ldct::GrayImage;
using ldct::MotionParams;
using ldct::RingParams;
using ldct::SeedSpec;

TEST_CASE("motion_kernel identity and axis-aligned cases") {
  const auto k1 = ldct::motion_kernel(MotionParams{1, 45.0});
  REQUIRE(k1.size() == 1);
  CHECK(k1[0] == 1.0);

  const auto k3 = ldct::motion_kernel(MotionParams{3, 0.0});
  const double third = 1.0 / 3.0;
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      const double expected = y == 1 ? third : 0.0;
      CHECK(k3[y * 3 + x] == Catch::Approx(expected).margin(1e-15));
    }
  }

  const auto k3v = ldct::motion_kernel(MotionParams{3, 90.0});
  for (int y = 0; y < 3; ++y) {
    for (int x = 0; x < 3; ++x) {
      CHECK(k3v[y * 3 + x] == Catch::Approx(k3[x * 3 + y]).margin(1e-12));
    }
  }
}

TEST_CASE("motion_kernel sums to 1 for all lengths and angles") {
  for (const int L : {1, 3, 5, 7, 9}) {
    for (int a = 0; a < 16; ++a) {
      const double theta = 180.0 * a / 16.0;
      const auto k = ldct::motion_kernel(MotionParams{L, theta});
      double sum = 0.0;
      for (double v : k) {
        CHECK(v >= 0.0);
        sum += v;
      }
      CHECK(std::abs(sum - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("motion_kernel rejects invalid params") {
  CHECK_THROWS_AS(ldct::motion_kernel(MotionParams{2, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ldct::motion_kernel(MotionParams{-1, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ldct::motion_kernel(MotionParams{3, 180.0}), std::invalid_argument);
  CHECK_THROWS_AS(ldct::motion_kernel(MotionParams{3, -1.0}), std::invalid_argument);
}

TEST_CASE("motion_blur identity and constants") {
  const GrayImage img = ldct::make_phantom(16, 16);
  const GrayImage id = ldct::motion_blur(img, MotionParams{1, 30.0});
  CHECK(id.pixels == img.pixels);

  const GrayImage c(12, 12, 0.6);
  for (const double theta : {0.0, 37.5, 90.0, 135.0}) {
    const GrayImage out = ldct::motion_blur(c, MotionParams{5, theta});
    double mean = 0.0;
    for (double v : out.pixels) {
      CHECK(std::abs(v - 0.6) <= 1e-12);
      mean += v;
    }
    CHECK(std::abs(mean / out.pixels.size() - 0.6) <= 1e-6);
  }
}

TEST_CASE("motion_blur spreads a bright pixel along the kernel row") {
  GrayImage img(8, 8, 0.0);
  img.at(4, 4) = 1.0;
  const GrayImage out = ldct::motion_blur(img, MotionParams{3, 0.0});
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const bool on_streak = y == 4 && x >= 3 && x <= 5;
      CHECK(out.at(x, y) == Catch::Approx(on_streak ? 1.0 / 3.0 : 0.0).margin(1e-15));
    }
  }
}

TEST_CASE("motion_blur matches the direct convolution oracle") {
  ldct::CounterRng rng{2024, 5};
  GrayImage img(12, 12);
  for (double& v : img.pixels) v = rng.uniform01();
  const MotionParams params{5, 30.0};
  const GrayImage ours = ldct::motion_blur(img, params);
  const GrayImage direct = oracle::convolve_direct(img, ldct::motion_kernel(params), 5);
  for (std::size_t i = 0; i < ours.pixels.size(); ++i) {
    CHECK(ours.pixels[i] == Catch::Approx(direct.pixels[i]).margin(1e-12));
  }
}

TEST_CASE("motion_blur rejects kernels larger than the image") {
  const GrayImage img(4, 4, 0.5);
  CHECK_THROWS_AS(ldct::motion_blur(img, MotionParams{5, 0.0}), std::invalid_argument);
}

TEST_CASE("sample_ring_params is deterministic and in-range") {
  const auto a = ldct::sample_ring_params(0.05, 64, 64, SeedSpec{10, 20});
  const auto b = ldct::sample_ring_params(0.05, 64, 64, SeedSpec{10, 20});
  CHECK(a.band_radii == b.band_radii);
  CHECK(a.band_sigmas == b.band_sigmas);

  const double half_diag = std::hypot(31.5, 31.5);
  for (std::size_t i = 0; i < a.band_radii.size(); ++i) {
    CHECK(a.band_radii[i] >= 0.0);
    CHECK(a.band_radii[i] <= half_diag);
    CHECK(a.band_sigmas[i] >= 1.0);
    CHECK(a.band_sigmas[i] <= 3.0);
  }
  CHECK_THROWS_AS(ldct::sample_ring_params(-0.1, 64, 64, SeedSpec{}), std::invalid_argument);
}

TEST_CASE("sample_ring_params band count is uniform on {3..8}") {
  const int n = 10000;
  int counts[9] = {0};
  for (int i = 0; i < n; ++i) {
    const auto p = ldct::sample_ring_params(0.1, 64, 64, SeedSpec{50, static_cast<std::uint64_t>(i)});
    REQUIRE(p.band_radii.size() >= 3);
    REQUIRE(p.band_radii.size() <= 8);
    ++counts[p.band_radii.size()];
  }
  // 3 sigma multinomial bound around n/6.
  const double expect = n / 6.0;
  const double sigma = std::sqrt(n * (1.0 / 6.0) * (5.0 / 6.0));
  for (int b = 3; b <= 8; ++b) {
    CHECK(std::abs(counts[b] - expect) < 3.0 * sigma);
  }
}

TEST_CASE("ring_artifact identity at alpha 0 and on zero images") {
  const GrayImage img = ldct::make_phantom(32, 32);
  const auto params = ldct::sample_ring_params(0.0, 32, 32, SeedSpec{1, 2});
  const GrayImage out = ldct::ring_artifact(img, params);
  CHECK(out.pixels == img.pixels);

  const GrayImage zero(16, 16, 0.0);
  RingParams p;
  p.alpha = 0.1;
  p.band_radii = {5.0};
  p.band_sigmas = {2.0};
  const GrayImage zout = ldct::ring_artifact(zero, p);
  for (double v : zout.pixels) CHECK(v == 0.0);
}

TEST_CASE("ring_artifact single band peak hits the exact formula value") {
  // 41x41 image centered at (20,20): pixel (40,20) sits at radius exactly 20,
  // where the normalized band profile is 1, so 0.5 * (1 + 0.1) = 0.55.
  const GrayImage img(41, 41, 0.5);
  RingParams p;
  p.alpha = 0.1;
  p.band_radii = {20.0};
  p.band_sigmas = {2.0};
  const GrayImage out = ldct::ring_artifact(img, p);
  CHECK(out.at(40, 20) == Catch::Approx(0.55).margin(1e-15));
}

TEST_CASE("ring_artifact never darkens (pre-clip pointwise non-decreasing)") {
  const GrayImage img = ldct::make_phantom(32, 32);
  const auto params = ldct::sample_ring_params(0.08, 32, 32, SeedSpec{77, 1});
  const GrayImage out = ldct::ring_artifact(img, params);
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    CHECK(out.pixels[i] >= img.pixels[i] - 1e-15);
    CHECK(out.pixels[i] <= 1.0);
  }
}

TEST_CASE("ring_artifact validates params") {
  const GrayImage img(8, 8, 0.5);
  RingParams p;
  p.alpha = 0.1;
  p.band_radii = {3.0, 4.0};
  p.band_sigmas = {2.0};
  CHECK_THROWS_AS(ldct::ring_artifact(img, p), std::invalid_argument);
  p.band_sigmas = {2.0, 0.0};
  CHECK_THROWS_AS(ldct::ring_artifact(img, p), std::invalid_argument);
}

TEST_CASE("default severity table matches the documented schedule") {
  const auto table = ldct::default_severity_table();
  ldct::validate_severity_table(table);
  REQUIRE(table.size() == 5);
  const ldct::SeverityLevel s5 = ldct::resolve_severity(table, 5);
  CHECK(s5.lambda == 1.0);
  CHECK(s5.motion_len == 7);
  CHECK(s5.ring_alpha == 0.10);
  const ldct::SeverityLevel s1 = ldct::resolve_severity(table, 1);
  CHECK(s1.lambda == 40.0);
  CHECK(s1.motion_len == 3);
  CHECK(s1.ring_alpha == 0.02);
}

TEST_CASE("validate_severity_table rejects non-monotone schedules") {
  auto table = ldct::default_severity_table();
  table[2].lambda = 50.0;  // lambda must be non-increasing
  CHECK_THROWS_AS(ldct::validate_severity_table(table), ldct::validation_error);
  table = ldct::default_severity_table();
  table[4].motion_len = 3;
  CHECK_THROWS_AS(ldct::validate_severity_table(table), ldct::validation_error);
  table = ldct::default_severity_table();
  table[1].level = 7;
  CHECK_THROWS_AS(ldct::validate_severity_table(table), ldct::validation_error);
  CHECK_THROWS_AS(ldct::resolve_severity(ldct::default_severity_table(), 6),
                  ldct::validation_error);
}

TEST_CASE("apply_severity is deterministic and paired across pipelines") {
  const GrayImage img = ldct::make_phantom(48, 48);
  const auto sev = ldct::resolve_severity(ldct::default_severity_table(), 3);
  const GrayImage a = ldct::apply_severity(img, sev, SeedSpec{7, 123});
  const GrayImage b = ldct::apply_severity(img, sev, SeedSpec{7, 123});
  CHECK(a.pixels == b.pixels);
}

TEST_CASE("mean SSIM decreases monotonically through severity levels") {
  const GrayImage img = ldct::make_phantom(128, 128);
  const auto table = ldct::default_severity_table();
  double prev = 2.0;
  for (const auto& sev : table) {
    double acc = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      acc += ldct::ssim(img, ldct::apply_severity(img, sev, SeedSpec{seed, 9}));
    }
    const double mean_ssim = acc / 20.0;
    CHECK(mean_ssim < prev);
    prev = mean_ssim;
  }
}

TEST_CASE("apply_corruption dispatches per kind") {
  const GrayImage img = ldct::make_phantom(32, 32);
  const GrayImage clean = ldct::apply_corruption(img, ldct::CorruptionSpec::none(), SeedSpec{1, 1});
  CHECK(clean.pixels == img.pixels);
  const GrayImage dosed =
      ldct::apply_corruption(img, ldct::CorruptionSpec::at_dose(10.0), SeedSpec{1, 1});
  CHECK(dosed.pixels == ldct::simulate_low_dose(img, ldct::DoseLevel{10.0}, SeedSpec{1, 1}).pixels);
  const auto sev = ldct::resolve_severity(ldct::default_severity_table(), 2);
  const GrayImage stressed =
      ldct::apply_corruption(img, ldct::CorruptionSpec::at_severity(sev), SeedSpec{1, 1});
  CHECK(stressed.pixels == ldct::apply_severity(img, sev, SeedSpec{1, 1}).pixels);
}
