// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/degrade.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

namespace pdls {

double Kernel::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

namespace {

void require_odd(std::size_t size) {
  if (size == 0 || size % 2 == 0) throw InvalidArgument("kernel size must be odd");
}

void normalize(Kernel& k) {
  const double total = k.sum();
  for (double& v : k.values) v /= total;
}

// Half-sample symmetric reflection: ... c b a | a b c ... | c b a ...
std::size_t reflect_index(long i, long n) {
  const long period = 2 * n;
  long m = i % period;
  if (m < 0) m += period;
  if (m >= n) m = period - 1 - m;
  return static_cast<std::size_t>(m);
}

// Splatting weights below this are rounding noise from cos/sin.
constexpr double kSnap = 1e-9;

double snap_fraction(double f) {
  if (f < kSnap) return 0.0;
  if (f > 1.0 - kSnap) return 1.0;
  return f;
}

}  // namespace

Kernel gaussian_kernel(std::size_t size, double sigma) {
  require_odd(size);
  if (!(sigma > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
  const long half = static_cast<long>(size / 2);
  std::vector<double> g(size);
  for (long i = -half; i <= half; ++i) {
    g[static_cast<std::size_t>(i + half)] = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
  }
  Kernel k{size, std::vector<double>(size * size)};
  for (std::size_t y = 0; y < size; ++y) {
    for (std::size_t x = 0; x < size; ++x) k.values[y * size + x] = g[y] * g[x];
  }
  normalize(k);
  return k;
}

Kernel motion_kernel(std::size_t size, double intensity, double angle_deg) {
  require_odd(size);
  if (!(intensity > 0.0 && intensity <= 1.0)) {
    throw InvalidArgument("motion blur intensity must lie in (0, 1]");
  }
  const auto length = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(intensity * static_cast<double>(size))));
  Kernel k{size, std::vector<double>(size * size, 0.0)};
  const double theta = angle_deg * std::numbers::pi / 180.0;
  const double dx = std::cos(theta);
  const double dy = -std::sin(theta);  // rows grow downwards
  const double centre = static_cast<double>(size / 2);
  const double first = -0.5 * static_cast<double>(length - 1);
  const long n = static_cast<long>(size);
  for (std::size_t j = 0; j < length; ++j) {
    const double s = first + static_cast<double>(j);
    const double px = centre + s * dx;
    const double py = centre + s * dy;
    const double x0 = std::floor(px);
    const double y0 = std::floor(py);
    const double fx = snap_fraction(px - x0);
    const double fy = snap_fraction(py - y0);
    const double w[2][2] = {{(1 - fx) * (1 - fy), fx * (1 - fy)}, {(1 - fx) * fy, fx * fy}};
    for (int oy = 0; oy < 2; ++oy) {
      for (int ox = 0; ox < 2; ++ox) {
        if (w[oy][ox] == 0.0) continue;
        const long xi = static_cast<long>(x0) + ox;
        const long yi = static_cast<long>(y0) + oy;
        if (xi < 0 || yi < 0 || xi >= n || yi >= n) continue;
        k.values[static_cast<std::size_t>(yi * n + xi)] += w[oy][ox];
      }
    }
  }
  normalize(k);
  return k;
}

ImageGrid convolve(const ImageGrid& image, const Kernel& kernel) {
  require_odd(kernel.size);
  const long w = static_cast<long>(image.width());
  const long h = static_cast<long>(image.height());
  const long half = static_cast<long>(kernel.size / 2);
  std::vector<double> out(image.size(), 0.0);
  for (long y = 0; y < h; ++y) {
    for (long x = 0; x < w; ++x) {
      double acc = 0.0;
      // out(x, y) = sum_{a,b} k(a, b) * in(x - a, y - b), offsets centred.
      for (long b = -half; b <= half; ++b) {
        const std::size_t sy = reflect_index(y - b, h);
        for (long a = -half; a <= half; ++a) {
          const std::size_t sx = reflect_index(x - a, w);
          acc += kernel.at(static_cast<std::size_t>(a + half), static_cast<std::size_t>(b + half)) *
                 image.at(sx, sy);
        }
      }
      out[static_cast<std::size_t>(y * w + x)] = acc;
    }
  }
  return ImageGrid(image.width(), image.height(), std::move(out));
}

void validate(const DegradationOperator& op, std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) throw InvalidArgument("empty image");
  if (const auto* g = std::get_if<GaussianBlur>(&op)) {
    require_odd(g->size);
    if (!(g->sigma > 0.0)) throw InvalidArgument("gaussian sigma must be positive");
  } else if (const auto* m = std::get_if<MotionBlur>(&op)) {
    require_odd(m->size);
    if (!(m->intensity > 0.0 && m->intensity <= 1.0)) {
      throw InvalidArgument("motion blur intensity must lie in (0, 1]");
    }
  } else if (const auto* d = std::get_if<Downsample>(&op)) {
    if (d->factor == 0 || width % d->factor != 0 || height % d->factor != 0) {
      throw InvalidArgument("factor must divide dimensions");
    }
  } else if (const auto* f = std::get_if<FreeformMask>(&op)) {
    if (f->mask.width() != width || f->mask.height() != height) {
      throw InvalidArgument("mask dimensions do not match the image");
    }
  }
}

namespace {

ImageGrid downsample(const ImageGrid& image, std::size_t factor) {
  const std::size_t ow = image.width() / factor;
  const std::size_t oh = image.height() / factor;
  std::vector<double> out(ow * oh, 0.0);
  const double inv = 1.0 / static_cast<double>(factor * factor);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t b = 0; b < factor; ++b) {
        for (std::size_t a = 0; a < factor; ++a) acc += image.at(x * factor + a, y * factor + b);
      }
      out[y * ow + x] = acc * inv;
    }
  }
  return ImageGrid(ow, oh, std::move(out));
}

}  // namespace

ImageGrid apply(const DegradationOperator& op, const ImageGrid& image, const NoiseModel& noise) {
  validate(op, image.width(), image.height());
  if (!(noise.sigma_y >= 0.0)) throw InvalidArgument("sigma_y must be non-negative");

  std::vector<double> clean = std::visit(
      [&](const auto& o) -> std::vector<double> {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return image.pixels();
        } else if constexpr (std::is_same_v<T, GaussianBlur>) {
          return convolve(image, gaussian_kernel(o.size, o.sigma)).pixels();
        } else if constexpr (std::is_same_v<T, MotionBlur>) {
          return convolve(image, motion_kernel(o.size, o.intensity, o.angle_deg)).pixels();
        } else if constexpr (std::is_same_v<T, Downsample>) {
          return downsample(image, o.factor).pixels();
        } else {
          std::vector<double> px = image.pixels();
          for (std::size_t i = 0; i < px.size(); ++i) {
            if (o.mask.pixels()[i] > 0.5) px[i] = 0.0;
          }
          return px;
        }
      },
      op);

  std::size_t ow = image.width();
  std::size_t oh = image.height();
  if (const auto* d = std::get_if<Downsample>(&op)) {
    ow /= d->factor;
    oh /= d->factor;
  }
  if (noise.sigma_y > 0.0) {
    std::mt19937_64 rng(noise.seed);
    std::normal_distribution<double> gauss(0.0, noise.sigma_y);
    for (double& p : clean) p += gauss(rng);
  }
  return ImageGrid(ow, oh, std::move(clean));
}

ImageGrid lift(const DegradationOperator& op, const ImageGrid& observed, std::size_t width,
               std::size_t height) {
  if (const auto* d = std::get_if<Downsample>(&op)) {
    if (observed.width() * d->factor != width || observed.height() * d->factor != height) {
      throw InvalidArgument("measurement size does not match the target grid");
    }
    std::vector<double> out(width * height);
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        out[y * width + x] = observed.at(x / d->factor, y / d->factor);
      }
    }
    return ImageGrid(width, height, std::move(out));
  }
  if (observed.width() != width || observed.height() != height) {
    throw InvalidArgument("measurement size does not match the target grid");
  }
  return observed;
}

ImageGrid make_freeform_mask(std::size_t width, std::size_t height, double coverage,
                             std::uint64_t seed) {
  if (!(coverage > 0.0 && coverage < 1.0)) throw InvalidArgument("mask coverage must lie in (0, 1)");
  if (width == 0 || height == 0) throw InvalidArgument("empty image");
  ImageGrid mask(width, height, 0.0);
  const auto total = static_cast<double>(width * height);
  const double target = coverage * total;
  const long radius = std::max<long>(1, std::lround(static_cast<double>(std::min(width, height)) / 32.0));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::size_t masked = 0;
  const auto stamp = [&](double cx, double cy) {
    const long ix = std::lround(cx);
    const long iy = std::lround(cy);
    for (long dy = -radius; dy <= radius; ++dy) {
      for (long dx = -radius; dx <= radius; ++dx) {
        if (dx * dx + dy * dy > radius * radius) continue;
        const long x = ix + dx;
        const long y = iy + dy;
        if (x < 0 || y < 0 || x >= static_cast<long>(width) || y >= static_cast<long>(height)) continue;
        const auto ux = static_cast<std::size_t>(x);
        const auto uy = static_cast<std::size_t>(y);
        if (mask.at(ux, uy) < 0.5) {
          mask.set(ux, uy, 1.0);
          ++masked;
        }
      }
    }
  };

  const double w = static_cast<double>(width - 1);
  const double h = static_cast<double>(height - 1);
  const std::size_t max_dabs = 64 * width * height;
  std::size_t dabs = 0;
  while (static_cast<double>(masked) < target) {
    double x = unit(rng) * w;
    double y = unit(rng) * h;
    double heading = unit(rng) * 2.0 * std::numbers::pi;
    const auto stroke_len = 4 + static_cast<std::size_t>(unit(rng) * static_cast<double>(std::max(width, height)));
    for (std::size_t s = 0; s < stroke_len && static_cast<double>(masked) < target; ++s) {
      stamp(x, y);
      if (++dabs > max_dabs) throw NumericalError("mask coverage not reachable");
      heading += (unit(rng) - 0.5) * 1.2;
      x = std::clamp(x + static_cast<double>(radius) * std::cos(heading), 0.0, w);
      y = std::clamp(y + static_cast<double>(radius) * std::sin(heading), 0.0, h);
    }
  }
  return mask;
}

namespace {

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidArgument("operator parameter '" + item + "' lacks '='");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

double to_double(const std::map<std::string, std::string>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("operator parameter '" + key + "' is not a number: " + it->second);
  }
}

std::uint64_t to_uint(const std::map<std::string, std::string>& p, const std::string& key,
                      std::uint64_t fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  std::uint64_t v = 0;
  const auto* first = it->second.data();
  const auto* last = first + it->second.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("operator parameter '" + key + "' is not an unsigned integer: " + it->second);
  }
  return v;
}

void reject_unknown(const std::map<std::string, std::string>& p,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : p) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      throw InvalidArgument("unknown operator parameter '" + k + "'");
    }
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

}  // namespace

DegradationOperator parse_operator(const std::string& descriptor, std::size_t width,
                                   std::size_t height) {
  const auto colon = descriptor.find(':');
  const std::string kind = descriptor.substr(0, colon);
  const auto params = parse_params(colon == std::string::npos ? "" : descriptor.substr(colon + 1));
  DegradationOperator op;
  if (kind == "id") {
    reject_unknown(params, {});
    op = Identity{};
  } else if (kind == "gblur") {
    reject_unknown(params, {"size", "sigma"});
    op = GaussianBlur{to_uint(params, "size", kGaussianBlurPreset.size),
                      to_double(params, "sigma", kGaussianBlurPreset.sigma)};
  } else if (kind == "mblur") {
    reject_unknown(params, {"size", "intensity", "angle"});
    op = MotionBlur{to_uint(params, "size", kMotionBlurPreset.size),
                    to_double(params, "intensity", kMotionBlurPreset.intensity),
                    to_double(params, "angle", kMotionBlurPreset.angle_deg)};
  } else if (kind == "sr") {
    reject_unknown(params, {"factor"});
    op = Downsample{to_uint(params, "factor", 8)};
  } else if (kind == "inpaint") {
    reject_unknown(params, {"coverage", "seed"});
    const std::uint64_t seed = to_uint(params, "seed", 0);
    double coverage = to_double(params, "coverage", -1.0);
    if (coverage < 0.0) {
      std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
      coverage = std::uniform_real_distribution<double>(0.10, 0.20)(rng);
    }
    op = FreeformMask{make_freeform_mask(width, height, coverage, seed), coverage, seed};
  } else {
    throw InvalidArgument("unknown degradation operator '" + kind + "'");
  }
  validate(op, width, height);
  return op;
}

std::string describe(const DegradationOperator& op) {
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return "id";
        } else if constexpr (std::is_same_v<T, GaussianBlur>) {
          return "gblur:size=" + std::to_string(o.size) + ",sigma=" + format_double(o.sigma);
        } else if constexpr (std::is_same_v<T, MotionBlur>) {
          return "mblur:size=" + std::to_string(o.size) + ",intensity=" + format_double(o.intensity) +
                 ",angle=" + format_double(o.angle_deg);
        } else if constexpr (std::is_same_v<T, Downsample>) {
          return "sr:factor=" + std::to_string(o.factor);
        } else {
          return "inpaint:coverage=" + format_double(o.coverage) + ",seed=" + std::to_string(o.seed);
        }
      },
      op);
}

}  // namespace pdls
