// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/cli/pgm.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <vector>

#include "pdls/error.hpp"

namespace pdls::cli {
namespace {

class HeaderReader {
 public:
  HeaderReader(std::istream& in, const std::string& name) : in_(in), name_(name) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw IoError(name_ + ": " + what + " at byte " + std::to_string(offset_));
  }

  int get() {
    const int c = in_.get();
    if (c != std::char_traits<char>::eof()) ++offset_;
    return c;
  }

  void skip_space_and_comments() {
    for (;;) {
      const int c = in_.peek();
      if (c == '#') {
        while (true) {
          const int d = get();
          if (d == '\n' || d == std::char_traits<char>::eof()) break;
        }
      } else if (c != std::char_traits<char>::eof() && std::isspace(c)) {
        get();
      } else {
        return;
      }
    }
  }

  unsigned long number(const char* field) {
    skip_space_and_comments();
    const int first = in_.peek();
    if (first == std::char_traits<char>::eof()) fail(std::string("truncated header, expected ") + field);
    if (!std::isdigit(first)) fail(std::string("expected ") + field);
    unsigned long value = 0;
    while (std::isdigit(in_.peek())) {
      value = value * 10 + static_cast<unsigned long>(get() - '0');
      if (value > 1u << 24) fail(std::string(field) + " too large");
    }
    return value;
  }

  std::size_t offset() const { return offset_; }

 private:
  std::istream& in_;
  const std::string& name_;
  std::size_t offset_ = 0;
};

}  // namespace

ImageGrid read_pgm(std::istream& in, const std::string& name) {
  HeaderReader header(in, name);
  if (header.get() != 'P' || header.get() != '5') header.fail("bad magic, expected P5");
  const unsigned long width = header.number("width");
  const unsigned long height = header.number("height");
  const unsigned long maxval = header.number("maxval");
  if (width == 0 || height == 0) header.fail("zero image dimension");
  if (maxval == 0 || maxval > 65535) header.fail("maxval out of range");
  const int sep = header.get();
  if (sep == std::char_traits<char>::eof() || !std::isspace(sep)) {
    header.fail("expected whitespace after maxval");
  }

  const std::size_t n = static_cast<std::size_t>(width) * height;
  const std::size_t bytes_per = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(n * bytes_per);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  const auto got = static_cast<std::size_t>(in.gcount());
  if (got != raw.size()) {
    throw IoError(name + ": truncated pixel data at byte " + std::to_string(header.offset() + got) +
                  " (expected " + std::to_string(raw.size()) + " bytes)");
  }

  std::vector<double> pixels(n);
  const double scale = static_cast<double>(maxval);
  for (std::size_t i = 0; i < n; ++i) {
    unsigned value = bytes_per == 1 ? raw[i] : (unsigned{raw[2 * i]} << 8) | raw[2 * i + 1];
    if (value > maxval) {
      throw IoError(name + ": sample exceeds maxval at byte " +
                    std::to_string(header.offset() + i * bytes_per));
    }
    pixels[i] = value / scale;
  }
  return ImageGrid(width, height, std::move(pixels));
}

ImageGrid read_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_pgm(in, path);
}

void write_pgm(std::ostream& out, const ImageGrid& image) {
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  std::vector<unsigned char> raw(image.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = static_cast<unsigned char>(std::lround(image.pixels()[i] * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

void write_image(const std::string& path, const ImageGrid& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  write_pgm(out, image);
  if (!out) throw IoError("write failed for " + path);
}

ImageGrid quantize8(const ImageGrid& image) {
  std::vector<double> q(image.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] = std::lround(image.pixels()[i] * 255.0) / 255.0;
  return ImageGrid(image.width(), image.height(), std::move(q));
}

}  // namespace pdls::cli
