// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "pdls/image_grid.hpp"

namespace pdls::cli {

/// Binary graymap (P5). Any maxval in [1, 65535] is accepted and rescaled to
/// [0, 1]; 16-bit samples are big-endian. Header problems raise IoError with
/// the byte offset where parsing stopped.
ImageGrid read_pgm(std::istream& in, const std::string& name = "<stream>");
ImageGrid read_image(const std::string& path);

/// Writes maxval 255; values are rounded to the nearest level.
void write_pgm(std::ostream& out, const ImageGrid& image);
void write_image(const std::string& path, const ImageGrid& image);

/// Nearest 8-bit level of every pixel, i.e. what a write/read round trip gives.
ImageGrid quantize8(const ImageGrid& image);

}  // namespace pdls::cli
