// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdls/flowfield.hpp"
#include "pdls/image_grid.hpp"

namespace pdls::cli {

/// Labelled images forming an exemplar field.
struct ExemplarSet {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<ImageGrid> images;
  std::vector<std::string> labels;

  std::size_t size() const { return images.size(); }
  GaussianMixture mixture(double variance = kExemplarVariance) const;
};

/// Two isotropic clusters at (+-2, 0), variance 0.05, labels A (+) and B (-).
GaussianMixture toy2d_mixture();

/// Standard deviation of the additive measurement noise of the toy2d task.
inline constexpr double kToyNoise = 1.5;

struct ToySample {
  Vec clean;
  Vec observed;
  std::string label;
};

/// Seeded draw: component, clean point from it, observation = clean + noise.
ToySample toy2d_sample(const GaussianMixture& mixture, std::uint64_t seed,
                       double noise = kToyNoise);

inline constexpr std::size_t kShapesSize = 32;
inline constexpr std::size_t kShapesPerClass = 30;
inline constexpr std::uint64_t kShapesSeed = 32;

/// Procedural 32x32 disks, squares and crosses (anti-aliased, fixed seed).
ExemplarSet shapes32(std::size_t per_class = kShapesPerClass, std::uint64_t seed = kShapesSeed);

}  // namespace pdls::cli
