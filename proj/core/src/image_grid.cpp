// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/image_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pdls {

ImageGrid::ImageGrid(std::size_t width, std::size_t height, double fill)
    : width_(width), height_(height), pixels_(width * height, std::clamp(fill, 0.0, 1.0)) {}

ImageGrid::ImageGrid(std::size_t width, std::size_t height, std::vector<double> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (pixels_.size() != width * height) {
    throw InvalidArgument("image has " + std::to_string(pixels_.size()) + " pixels, expected " +
                          std::to_string(width * height));
  }
  for (double& p : pixels_) {
    if (std::isnan(p)) throw InvalidArgument("image pixel is NaN");
    p = std::clamp(p, 0.0, 1.0);
  }
}

void ImageGrid::set(std::size_t x, std::size_t y, double v) {
  pixels_[y * width_ + x] = std::clamp(v, 0.0, 1.0);
}

}  // namespace pdls
