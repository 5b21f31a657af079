// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <vector>

#include "pdls/vec.hpp"

namespace pdls {

/// Grayscale image, row-major, intensities clamped to [0, 1] on construction.
class ImageGrid {
 public:
  ImageGrid() = default;
  ImageGrid(std::size_t width, std::size_t height, double fill = 0.0);
  ImageGrid(std::size_t width, std::size_t height, std::vector<double> pixels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }

  double at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  /// Clamps the stored value into [0, 1].
  void set(std::size_t x, std::size_t y, double v);

  const std::vector<double>& pixels() const { return pixels_; }
  VecView view() const { return pixels_; }

  bool same_shape(const ImageGrid& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<double> pixels_;
};

}  // namespace pdls
