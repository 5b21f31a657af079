// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/cli/datasets.hpp"

#include <cmath>
#include <random>

#include "pdls/pdls.hpp"

namespace pdls::cli {

GaussianMixture ExemplarSet::mixture(double variance) const {
  std::vector<Vec> means;
  means.reserve(images.size());
  for (const auto& img : images) means.push_back(img.pixels());
  return GaussianMixture::from_exemplars(means, labels, variance);
}

GaussianMixture toy2d_mixture() {
  return GaussianMixture({{0.5, {2.0, 0.0}, 0.05, "A"}, {0.5, {-2.0, 0.0}, 0.05, "B"}});
}

ToySample toy2d_sample(const GaussianMixture& mixture, std::uint64_t seed, double noise) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double u = unit(rng);
  std::size_t k = 0;
  double acc = mixture[0].weight;
  while (u > acc && k + 1 < mixture.size()) acc += mixture[++k].weight;
  const auto& c = mixture[k];
  ToySample s;
  s.label = c.label;
  s.clean.resize(mixture.dim());
  s.observed.resize(mixture.dim());
  for (std::size_t j = 0; j < mixture.dim(); ++j) {
    s.clean[j] = c.mean[j] + std::sqrt(c.variance) * gauss(rng);
    s.observed[j] = s.clean[j] + noise * gauss(rng);
  }
  return s;
}

namespace {

enum class Shape { Disk, Square, Cross };

bool inside(Shape shape, double x, double y, double cx, double cy, double r) {
  const double dx = std::abs(x - cx);
  const double dy = std::abs(y - cy);
  switch (shape) {
    case Shape::Disk: return dx * dx + dy * dy <= r * r;
    case Shape::Square: return dx <= r && dy <= r;
    case Shape::Cross: {
      const double arm = r / 3.0;
      return (dx <= r && dy <= arm) || (dy <= r && dx <= arm);
    }
  }
  return false;
}

constexpr double kBackground = 0.1;
constexpr double kForeground = 0.9;
constexpr int kSuper = 4;

ImageGrid render(Shape shape, double cx, double cy, double r) {
  ImageGrid img(kShapesSize, kShapesSize, kBackground);
  for (std::size_t y = 0; y < kShapesSize; ++y) {
    for (std::size_t x = 0; x < kShapesSize; ++x) {
      int hits = 0;
      for (int sy = 0; sy < kSuper; ++sy) {
        for (int sx = 0; sx < kSuper; ++sx) {
          const double px = static_cast<double>(x) + (sx + 0.5) / kSuper;
          const double py = static_cast<double>(y) + (sy + 0.5) / kSuper;
          if (inside(shape, px, py, cx, cy, r)) ++hits;
        }
      }
      const double cover = static_cast<double>(hits) / (kSuper * kSuper);
      img.set(x, y, kBackground + cover * (kForeground - kBackground));
    }
  }
  return img;
}

}  // namespace

ExemplarSet shapes32(std::size_t per_class, std::uint64_t seed) {
  static const char* kNames[] = {"disk", "square", "cross"};
  ExemplarSet set;
  set.width = kShapesSize;
  set.height = kShapesSize;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> centre(11.0, 21.0);
  std::uniform_real_distribution<double> radius(5.0, 9.0);
  for (int cls = 0; cls < 3; ++cls) {
    for (std::size_t i = 0; i < per_class; ++i) {
      const double cx = centre(rng);
      const double cy = centre(rng);
      const double r = radius(rng);
      set.images.push_back(render(static_cast<Shape>(cls), cx, cy, r));
      set.labels.emplace_back(kNames[cls]);
    }
  }
  return set;
}

}  // namespace pdls::cli
