// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdls/degrade.hpp"

namespace pdls {
namespace {

ImageGrid random_image(std::size_t w, std::size_t h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> px(w * h);
  for (double& v : px) v = unit(rng);
  return ImageGrid(w, h, px);
}

std::size_t masked_count(const ImageGrid& mask) {
  std::size_t n = 0;
  for (double v : mask.pixels()) n += v > 0.5;
  return n;
}

TEST(ImageGridTest, ClampsAndValidates) {
  const ImageGrid g(2, 1, {-0.5, 1.5});
  EXPECT_EQ(g.pixels(), (std::vector<double>{0.0, 1.0}));
  EXPECT_THROW(ImageGrid(2, 2, std::vector<double>{0.1}), InvalidArgument);
  EXPECT_THROW(ImageGrid(1, 1, std::vector<double>{std::nan("")}), InvalidArgument);
}

TEST(GaussianKernel, SizeOneIsIdentity) {
  const Kernel k = gaussian_kernel(1, 0.7);
  EXPECT_EQ(k.values, (std::vector<double>{1.0}));
}

TEST(GaussianKernel, PaperSizeNormalizedWithCentralPeak) {
  const Kernel k = gaussian_kernel(61, 3.0);
  EXPECT_NEAR(k.sum(), 1.0, 1e-12);
  const double centre = k.at(30, 30);
  for (double v : k.values) EXPECT_LE(v, centre);
}

TEST(GaussianKernel, CentreToEdgeRatio) {
  for (double sigma : {0.5, 1.0, 2.0}) {
    const Kernel k = gaussian_kernel(3, sigma);
    EXPECT_NEAR(k.at(1, 1) / k.at(0, 1), std::exp(1.0 / (2 * sigma * sigma)),
                1e-12 * std::exp(1.0 / (2 * sigma * sigma)));
  }
}

TEST(GaussianKernel, Errors) {
  EXPECT_THROW(gaussian_kernel(4, 1.0), InvalidArgument);
  EXPECT_THROW(gaussian_kernel(0, 1.0), InvalidArgument);
  EXPECT_THROW(gaussian_kernel(3, 0.0), InvalidArgument);
}

TEST(MotionKernel, ShortStreakIsSinglePixel) {
  const Kernel k = motion_kernel(7, 0.1, 45.0);
  std::size_t nonzero = 0;
  for (double v : k.values) nonzero += v != 0.0;
  EXPECT_EQ(nonzero, 1u);
  EXPECT_EQ(k.at(3, 3), 1.0);
}

TEST(MotionKernel, HorizontalStreakHasEqualWeights) {
  const Kernel k = motion_kernel(61, 0.5, 0.0);
  std::size_t nonzero = 0;
  for (std::size_t y = 0; y < 61; ++y) {
    for (std::size_t x = 0; x < 61; ++x) {
      if (k.at(x, y) == 0.0) continue;
      ++nonzero;
      EXPECT_EQ(y, 30u);
      EXPECT_NEAR(k.at(x, y), 1.0 / 31.0, 1e-15);
    }
  }
  EXPECT_EQ(nonzero, 31u);
}

TEST(MotionKernel, AlwaysNormalized) {
  for (double angle : {0.0, 17.0, 45.0, 90.0, 133.0, 270.0}) {
    for (double intensity : {0.05, 0.3, 0.5, 1.0}) {
      EXPECT_NEAR(motion_kernel(61, intensity, angle).sum(), 1.0, 1e-12);
      EXPECT_NEAR(motion_kernel(7, intensity, angle).sum(), 1.0, 1e-12);
    }
  }
}

TEST(MotionKernel, Errors) {
  EXPECT_THROW(motion_kernel(7, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(motion_kernel(7, -1.0, 0.0), InvalidArgument);
  EXPECT_THROW(motion_kernel(7, 1.5, 0.0), InvalidArgument);
  EXPECT_THROW(motion_kernel(8, 0.5, 0.0), InvalidArgument);
}

TEST(Apply, IdentityWithoutNoiseIsExact) {
  const ImageGrid img = random_image(9, 5, 1);
  EXPECT_EQ(apply(Identity{}, img, {}), img);
}

TEST(Apply, DownsamplePreservesConstants) {
  const ImageGrid img(64, 64, 0.37);
  const ImageGrid y = apply(Downsample{8}, img, {});
  ASSERT_EQ(y.width(), 8u);
  ASSERT_EQ(y.height(), 8u);
  for (double v : y.pixels()) EXPECT_NEAR(v, 0.37, 1e-15);
}

TEST(Apply, BlurOfCentredDeltaIsKernel) {
  ImageGrid delta(21, 21, 0.0);
  delta.set(10, 10, 1.0);
  const Kernel k = gaussian_kernel(7, 1.5);
  const ImageGrid y = apply(GaussianBlur{7, 1.5}, delta, {});
  for (std::size_t yy = 0; yy < 21; ++yy) {
    for (std::size_t xx = 0; xx < 21; ++xx) {
      const bool inside = xx >= 7 && xx <= 13 && yy >= 7 && yy <= 13;
      const double expected = inside ? k.at(xx - 7, yy - 7) : 0.0;
      EXPECT_NEAR(y.at(xx, yy), expected, 1e-12) << xx << "," << yy;
    }
  }
}

TEST(Apply, MotionBlurOfDeltaIsFlippedKernel) {
  ImageGrid delta(21, 21, 0.0);
  delta.set(10, 10, 1.0);
  const Kernel k = motion_kernel(7, 0.5, 30.0);
  const ImageGrid y = apply(MotionBlur{7, 0.5, 30.0}, delta, {});
  for (std::size_t yy = 7; yy <= 13; ++yy) {
    for (std::size_t xx = 7; xx <= 13; ++xx) {
      // Convolution mirrors the kernel around its centre.
      EXPECT_NEAR(y.at(xx, yy), k.at(13 - xx, 13 - yy), 1e-12);
    }
  }
}

TEST(Apply, BlurOfConstantIsExact) {
  const ImageGrid img(16, 12, 0.42);
  for (const DegradationOperator& op : std::vector<DegradationOperator>{
           GaussianBlur{7, 1.5}, MotionBlur{7, 0.5, 45.0}, GaussianBlur{61, 3.0}}) {
    const ImageGrid y = apply(op, img, {});
    for (double v : y.pixels()) EXPECT_NEAR(v, 0.42, 1e-12);
  }
}

TEST(Apply, Linearity) {
  const ImageGrid a = random_image(32, 32, 2), b = random_image(32, 32, 3);
  for (double w : {0.1, 0.5, 0.9}) {
    std::vector<double> mix(a.size());
    for (std::size_t i = 0; i < mix.size(); ++i) mix[i] = w * a.pixels()[i] + (1 - w) * b.pixels()[i];
    const ImageGrid m(32, 32, mix);
    for (const DegradationOperator& op : std::vector<DegradationOperator>{
             GaussianBlur{7, 1.5}, MotionBlur{7, 0.5, 45.0}, Downsample{8}, Downsample{2}}) {
      const ImageGrid ya = apply(op, a, {}), yb = apply(op, b, {}), ym = apply(op, m, {});
      for (std::size_t i = 0; i < ym.size(); ++i) {
        EXPECT_NEAR(ym.pixels()[i], w * ya.pixels()[i] + (1 - w) * yb.pixels()[i], 1e-10);
      }
    }
  }
}

TEST(Apply, MaskZeroesHiddenPixels) {
  const ImageGrid img(8, 8, 0.8);
  const ImageGrid mask = make_freeform_mask(8, 8, 0.3, 4);
  const ImageGrid y = apply(FreeformMask{mask, 0.3, 4}, img, {});
  for (std::size_t i = 0; i < y.size(); ++i) {
    EXPECT_EQ(y.pixels()[i], mask.pixels()[i] > 0.5 ? 0.0 : 0.8);
  }
}

TEST(Apply, NoiseStatistics) {
  const ImageGrid img(1000, 1000, 0.5);
  const ImageGrid y = apply(Identity{}, img, NoiseModel{0.01, 99});
  double sum = 0.0, sq = 0.0;
  for (double v : y.pixels()) {
    sum += v - 0.5;
    sq += (v - 0.5) * (v - 0.5);
  }
  const double n = static_cast<double>(y.size());
  const double sd = std::sqrt(sq / n - (sum / n) * (sum / n));
  EXPECT_NEAR(sd, 0.01, 0.02 * 0.01);
  EXPECT_NEAR(sum / n, 0.0, 1e-4);
}

TEST(Apply, NoiseIsSeededAndClamped) {
  const ImageGrid img = random_image(16, 16, 5);
  EXPECT_EQ(apply(Identity{}, img, {0.3, 7}), apply(Identity{}, img, {0.3, 7}));
  EXPECT_NE(apply(Identity{}, img, {0.3, 7}), apply(Identity{}, img, {0.3, 8}));
  const ImageGrid y = apply(Identity{}, img, {0.3, 7});
  for (double v : y.pixels()) {
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Apply, CompatibilityErrors) {
  const ImageGrid img(31, 31, 0.5);
  try {
    apply(Downsample{8}, img, {});
    FAIL() << "expected a throw";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("factor must divide dimensions"), std::string::npos);
  }
  EXPECT_THROW(apply(GaussianBlur{6, 1.0}, img, {}), InvalidArgument);
  EXPECT_THROW(apply(FreeformMask{ImageGrid(8, 8, 0.0), 0.1, 1}, img, {}), InvalidArgument);
  EXPECT_THROW(apply(Identity{}, img, {-0.1, 1}), InvalidArgument);
}

TEST(Lift, ReplicatesDownsampledPixels) {
  const ImageGrid small(2, 1, {0.2, 0.6});
  const ImageGrid big = lift(Downsample{4}, small, 8, 4);
  for (std::size_t y = 0; y < 4; ++y) {
    for (std::size_t x = 0; x < 8; ++x) EXPECT_EQ(big.at(x, y), x < 4 ? 0.2 : 0.6);
  }
  const ImageGrid same = random_image(8, 4, 1);
  EXPECT_EQ(lift(GaussianBlur{}, same, 8, 4), same);
  EXPECT_THROW(lift(Downsample{4}, small, 8, 8), InvalidArgument);
}

TEST(FreeformMask, CoverageWithinTolerance) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ImageGrid mask = make_freeform_mask(32, 32, 0.15, seed);
    const double frac = masked_count(mask) / 1024.0;
    EXPECT_GE(frac, 0.13) << seed;
    EXPECT_LE(frac, 0.17) << seed;
  }
  const ImageGrid big = make_freeform_mask(128, 96, 0.4, 3);
  EXPECT_NEAR(masked_count(big) / (128.0 * 96.0), 0.4, 0.02);
}

TEST(FreeformMask, DeterministicPerSeed) {
  EXPECT_EQ(make_freeform_mask(32, 32, 0.15, 7), make_freeform_mask(32, 32, 0.15, 7));
  EXPECT_NE(make_freeform_mask(32, 32, 0.15, 7), make_freeform_mask(32, 32, 0.15, 8));
}

TEST(FreeformMask, TinyCoverageStillMasksSomething) {
  EXPECT_GE(masked_count(make_freeform_mask(32, 32, 0.01, 1)), 1u);
}

TEST(FreeformMask, Errors) {
  EXPECT_THROW(make_freeform_mask(32, 32, 0.0, 1), InvalidArgument);
  EXPECT_THROW(make_freeform_mask(32, 32, 1.0, 1), InvalidArgument);
  EXPECT_THROW(make_freeform_mask(0, 32, 0.5, 1), InvalidArgument);
}

TEST(Descriptors, ParseEveryForm) {
  const auto g = std::get<GaussianBlur>(parse_operator("gblur:size=61,sigma=3.0", 64, 64));
  EXPECT_EQ(g.size, 61u);
  EXPECT_EQ(g.sigma, 3.0);
  const auto m = std::get<MotionBlur>(parse_operator("mblur:size=61,intensity=0.5,angle=45", 64, 64));
  EXPECT_EQ(m.intensity, 0.5);
  EXPECT_EQ(m.angle_deg, 45.0);
  EXPECT_EQ(std::get<Downsample>(parse_operator("sr:factor=8", 64, 64)).factor, 8u);
  const auto mask = std::get<FreeformMask>(parse_operator("inpaint:coverage=0.15,seed=7", 32, 32));
  EXPECT_EQ(mask.mask, make_freeform_mask(32, 32, 0.15, 7));
  EXPECT_TRUE(std::holds_alternative<Identity>(parse_operator("id", 8, 8)));
}

TEST(Descriptors, DefaultCoverageIsDrawnFromTenToTwentyPercent) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto m = std::get<FreeformMask>(
        parse_operator("inpaint:seed=" + std::to_string(seed), 32, 32));
    EXPECT_GE(m.coverage, 0.10);
    EXPECT_LE(m.coverage, 0.20);
  }
}

TEST(Descriptors, DescribeRoundTrips) {
  for (const char* d : {"gblur:size=7,sigma=1.5", "mblur:size=61,intensity=0.5,angle=45",
                        "sr:factor=8", "inpaint:coverage=0.15,seed=7", "id"}) {
    const auto op = parse_operator(d, 64, 64);
    EXPECT_EQ(describe(parse_operator(describe(op), 64, 64)), describe(op)) << d;
  }
  EXPECT_EQ(describe(parse_operator("gblur:size=7,sigma=1.5", 8, 8)), "gblur:size=7,sigma=1.5");
}

TEST(Descriptors, Errors) {
  EXPECT_THROW(parse_operator("blur", 8, 8), InvalidArgument);
  EXPECT_THROW(parse_operator("gblur:size=7,sigma=x", 8, 8), InvalidArgument);
  EXPECT_THROW(parse_operator("gblur:size=7,radius=2", 8, 8), InvalidArgument);
  EXPECT_THROW(parse_operator("gblur:size", 8, 8), InvalidArgument);
  EXPECT_THROW(parse_operator("sr:factor=3", 8, 8), InvalidArgument);
  EXPECT_THROW(parse_operator("sr:factor=-8", 64, 64), InvalidArgument);
}

}  // namespace
}  // namespace pdls
