// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pdls/cli/datasets.hpp"
#include "pdls/degrade.hpp"
#include "pdls/metrics.hpp"

namespace pdls {
namespace {

ImageGrid pattern(std::size_t w, std::size_t h) {
  std::vector<double> px(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      px[y * w + x] = 0.5 + 0.25 * std::sin(0.7 * x) * std::cos(0.4 * y);
    }
  }
  return ImageGrid(w, h, px);
}

TEST(Psnr, IdenticalIsInfinite) {
  const ImageGrid a = pattern(12, 12);
  EXPECT_EQ(psnr(a, a), kPsnrIdentical);
  EXPECT_TRUE(std::isinf(kPsnrIdentical));
}

TEST(Psnr, FromMse) {
  EXPECT_NEAR(psnr_from_mse(0.01), 20.0, 1e-12);
  EXPECT_NEAR(psnr_from_mse(0.0001), 40.0, 1e-12);
  EXPECT_NEAR(psnr_from_mse(0.04, 2.0), 20.0, 1e-12);
}

TEST(Psnr, ShapeAndPeakErrors) {
  EXPECT_THROW(psnr(ImageGrid(4, 4), ImageGrid(4, 5)), InvalidArgument);
  EXPECT_THROW(psnr(ImageGrid(4, 4), ImageGrid(4, 4), 0.0), InvalidArgument);
  EXPECT_THROW(mse(Vec{1.0}, Vec{1.0, 2.0}), InvalidArgument);
}

TEST(Psnr, Symmetric) {
  std::mt19937_64 rng(1);
  const ImageGrid a = pattern(16, 16);
  const ImageGrid b = apply(Identity{}, a, {0.05, 3});
  EXPECT_EQ(psnr(a, b), psnr(b, a));
  EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
}

TEST(Ssim, IdenticalIsOne) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ImageGrid a = apply(Identity{}, pattern(20, 17), {0.2, seed});
    EXPECT_NEAR(ssim(a, a), 1.0, 1e-12);
  }
}

TEST(Ssim, NegativeIsDissimilar) {
  const ImageGrid a = pattern(24, 24);
  std::vector<double> neg(a.size());
  for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = 1.0 - a.pixels()[i];
  const ImageGrid b(24, 24, neg);
  const double s = ssim(a, b);
  EXPECT_LT(s, 0.5);
  EXPECT_NEAR(s, testing::naive_ssim(a, b), 1e-12);
}

TEST(Ssim, ConstantImagesClosedForm) {
  const double c1 = (0.01) * (0.01);
  for (auto [a, b] : {std::pair{0.2, 0.7}, std::pair{0.5, 0.5}, std::pair{0.0, 1.0}}) {
    const double expected = (2 * a * b + c1) / (a * a + b * b + c1);
    EXPECT_NEAR(ssim(ImageGrid(16, 16, a), ImageGrid(16, 16, b)), expected, 1e-12);
  }
}

TEST(Ssim, MatchesNaiveImplementation) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ImageGrid a = pattern(32, 20);
    const ImageGrid b = apply(GaussianBlur{5, 1.0}, a, {0.05, seed});
    EXPECT_NEAR(ssim(a, b), testing::naive_ssim(a, b), 1e-12);
  }
}

TEST(Ssim, TooSmallThrows) {
  EXPECT_THROW(ssim(ImageGrid(10, 20), ImageGrid(10, 20)), InvalidArgument);
  EXPECT_THROW(ssim(ImageGrid(12, 12), ImageGrid(12, 13)), InvalidArgument);
}

TEST(Metrics, MonotoneInNoiseLevel) {
  const ImageGrid clean = cli::shapes32().images[5];
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    double prev_psnr = kPsnrIdentical, prev_ssim = 1.0;
    for (double sigma : {0.01, 0.05, 0.1}) {
      const ImageGrid noisy = apply(Identity{}, clean, {sigma, seed});
      const double p = psnr(noisy, clean), s = ssim(noisy, clean);
      EXPECT_LT(p, prev_psnr) << "seed " << seed << " sigma " << sigma;
      EXPECT_LT(s, prev_ssim) << "seed " << seed << " sigma " << sigma;
      EXPECT_GE(s, -1.0);
      prev_psnr = p;
      prev_ssim = s;
    }
  }
}

TEST(ClassAccuracy, NearestMeanWithLowestIndexTies) {
  const GaussianMixture mix({{0.25, {1.0, 0.0}, 0.0, "A"},
                             {0.25, {-1.0, 0.0}, 0.0, "B"},
                             {0.5, {0.0, 5.0}, 0.0, "C"}});
  EXPECT_EQ(class_accuracy(Vec{1.0, 0.0}, mix, "A"), 1);
  EXPECT_EQ(class_accuracy(Vec{-1.0, 0.0}, mix, "A"), 0);
  EXPECT_EQ(nearest_label(Vec{0.0, 0.0}, mix), "A");
  EXPECT_EQ(class_accuracy(Vec{0.0, 0.0}, mix, "A"), 1);
  EXPECT_EQ(class_accuracy(Vec{0.0, 0.0}, mix, "B"), 0);
  EXPECT_EQ(class_accuracy(Vec{0.0, 4.0}, mix, "C"), 1);
}

TEST(ClassAccuracy, UnlabelledMixtureThrows) {
  const GaussianMixture mix({{0.5, {1.0}, 0.0, ""}, {0.5, {-1.0}, 0.0, "B"}});
  EXPECT_THROW(class_accuracy(Vec{0.0}, mix, "B"), InvalidArgument);
}

}  // namespace
}  // namespace pdls
