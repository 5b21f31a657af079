// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pdls/image_grid.hpp"

namespace pdls {

/// Square convolution kernel, row-major, odd side length.
struct Kernel {
  std::size_t size = 1;
  std::vector<double> values{1.0};

  double at(std::size_t x, std::size_t y) const { return values[y * size + x]; }
  double sum() const;
};

struct GaussianBlur {
  std::size_t size = 7;
  double sigma = 1.5;
};

/// Linear streak of `intensity * size` pixels through the kernel centre.
struct MotionBlur {
  std::size_t size = 7;
  double intensity = 0.5;
  double angle_deg = 45.0;
};

/// Block averaging by `factor` in both directions.
struct Downsample {
  std::size_t factor = 8;
};

/// Pixels where the mask is 1 are hidden (set to 0). `coverage` and `seed`
/// record how the mask was generated.
struct FreeformMask {
  ImageGrid mask;
  double coverage = 0.0;
  std::uint64_t seed = 0;
};

struct Identity {};

using DegradationOperator = std::variant<Identity, GaussianBlur, MotionBlur, Downsample, FreeformMask>;

struct NoiseModel {
  double sigma_y = 0.0;
  std::uint64_t seed = 0;
};

/// Measurement noise level used throughout the experiments.
inline constexpr double kDefaultSigmaY = 0.01;

/// Kernel presets scaled for 32x32 inputs.
inline constexpr GaussianBlur kGaussianBlurPreset{7, 1.5};
inline constexpr MotionBlur kMotionBlurPreset{7, 0.5, 45.0};
/// Kernels matching the 61x61 setup used at 512x512.
inline constexpr GaussianBlur kGaussianBlurLarge{61, 3.0};
inline constexpr MotionBlur kMotionBlurLarge{61, 0.5, 45.0};

Kernel gaussian_kernel(std::size_t size, double sigma);
Kernel motion_kernel(std::size_t size, double intensity, double angle_deg);

/// 2-D convolution with half-sample symmetric (reflect) padding.
ImageGrid convolve(const ImageGrid& image, const Kernel& kernel);

/// y = A x + n, clamped to [0, 1]. Downsample returns the smaller grid.
ImageGrid apply(const DegradationOperator& op, const ImageGrid& image, const NoiseModel& noise);

/// Maps a measurement back onto the full-resolution grid the prior lives on:
/// nearest-neighbour replication for Downsample, the measurement itself
/// otherwise.
ImageGrid lift(const DegradationOperator& op, const ImageGrid& observed, std::size_t width,
               std::size_t height);

/// Seeded random-walk brush strokes covering `coverage` of the image to
/// within 2 percentage points.
ImageGrid make_freeform_mask(std::size_t width, std::size_t height, double coverage,
                             std::uint64_t seed);

void validate(const DegradationOperator& op, std::size_t width, std::size_t height);

/// Parses `gblur:size=61,sigma=3.0`, `mblur:size=61,intensity=0.5,angle=45`,
/// `sr:factor=8`, `inpaint:coverage=0.15,seed=7` or `id`. Masks are built for
/// the given image size; a missing coverage is drawn uniformly from
/// [0.10, 0.20] using the mask seed.
DegradationOperator parse_operator(const std::string& descriptor, std::size_t width,
                                   std::size_t height);

/// Canonical descriptor; parse_operator(describe(op)) rebuilds the operator.
std::string describe(const DegradationOperator& op);

}  // namespace pdls
