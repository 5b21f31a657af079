// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/metrics.hpp"

#include <cmath>

namespace pdls {

double mse(VecView a, VecView b) {
  require_same_dim(a, b, "mse");
  if (a.empty()) throw InvalidArgument("mse of empty inputs");
  return squared_distance(a, b) / static_cast<double>(a.size());
}

double mse(const ImageGrid& a, const ImageGrid& b) {
  if (!a.same_shape(b)) throw InvalidArgument("image dimensions differ");
  return mse(a.view(), b.view());
}

double psnr_from_mse(double mse_value, double peak) {
  if (!(peak > 0.0)) throw InvalidArgument("peak must be positive");
  if (mse_value == 0.0) return kPsnrIdentical;
  return 10.0 * std::log10(peak * peak / mse_value);
}

double psnr(VecView a, VecView b, double peak) { return psnr_from_mse(mse(a, b), peak); }

double psnr(const ImageGrid& a, const ImageGrid& b, double peak) {
  return psnr_from_mse(mse(a, b), peak);
}

namespace {

std::vector<double> ssim_weights() {
  std::vector<double> g(kSsimWindow);
  const long half = static_cast<long>(kSsimWindow / 2);
  double total = 0.0;
  for (long i = -half; i <= half; ++i) {
    const double v = std::exp(-static_cast<double>(i * i) / (2.0 * kSsimSigma * kSsimSigma));
    g[static_cast<std::size_t>(i + half)] = v;
    total += v;
  }
  for (double& v : g) v /= total;
  return g;
}

// Separable 'valid' filtering: output is (w - n + 1) x (h - n + 1).
std::vector<double> filter_valid(const std::vector<double>& img, std::size_t w, std::size_t h,
                                 const std::vector<double>& g) {
  const std::size_t n = g.size();
  const std::size_t ow = w - n + 1;
  const std::size_t oh = h - n + 1;
  std::vector<double> rows(ow * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += g[i] * img[y * w + x + i];
      rows[y * ow + x] = acc;
    }
  }
  std::vector<double> out(ow * oh);
  for (std::size_t y = 0; y < oh; ++y) {
    for (std::size_t x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += g[i] * rows[(y + i) * ow + x];
      out[y * ow + x] = acc;
    }
  }
  return out;
}

}  // namespace

double ssim(const ImageGrid& a, const ImageGrid& b, double peak) {
  if (!a.same_shape(b)) throw InvalidArgument("image dimensions differ");
  if (a.width() < kSsimWindow || a.height() < kSsimWindow) {
    throw InvalidArgument("image smaller than the 11x11 SSIM window");
  }
  const std::size_t w = a.width();
  const std::size_t h = a.height();
  const auto g = ssim_weights();
  const auto& pa = a.pixels();
  const auto& pb = b.pixels();
  std::vector<double> aa(pa.size()), bb(pa.size()), ab(pa.size());
  for (std::size_t i = 0; i < pa.size(); ++i) {
    aa[i] = pa[i] * pa[i];
    bb[i] = pb[i] * pb[i];
    ab[i] = pa[i] * pb[i];
  }
  const auto mu_a = filter_valid(pa, w, h, g);
  const auto mu_b = filter_valid(pb, w, h, g);
  const auto e_aa = filter_valid(aa, w, h, g);
  const auto e_bb = filter_valid(bb, w, h, g);
  const auto e_ab = filter_valid(ab, w, h, g);
  const double c1 = (kSsimK1 * peak) * (kSsimK1 * peak);
  const double c2 = (kSsimK2 * peak) * (kSsimK2 * peak);
  double total = 0.0;
  for (std::size_t i = 0; i < mu_a.size(); ++i) {
    const double ma = mu_a[i];
    const double mb = mu_b[i];
    const double va = e_aa[i] - ma * ma;
    const double vb = e_bb[i] - mb * mb;
    const double cov = e_ab[i] - ma * mb;
    total += ((2.0 * ma * mb + c1) * (2.0 * cov + c2)) /
             ((ma * ma + mb * mb + c1) * (va + vb + c2));
  }
  return total / static_cast<double>(mu_a.size());
}

const std::string& nearest_label(VecView x, const GaussianMixture& mixture) {
  if (x.size() != mixture.dim()) throw InvalidArgument("class_accuracy: dimension mismatch");
  std::size_t best = 0;
  double best_d2 = squared_distance(x, mixture[0].mean);
  for (std::size_t k = 1; k < mixture.size(); ++k) {
    const double d2 = squared_distance(x, mixture[k].mean);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = k;
    }
  }
  return mixture[best].label;
}

int class_accuracy(VecView reconstruction, const GaussianMixture& mixture,
                   const std::string& true_label) {
  for (const auto& c : mixture.components()) {
    if (c.label.empty()) throw InvalidArgument("mixture components are unlabeled");
  }
  return nearest_label(reconstruction, mixture) == true_label ? 1 : 0;
}

}  // namespace pdls
