// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pdls/flowfield.hpp"
#include "pdls/image_grid.hpp"

namespace pdls {

/// Returned by psnr() when the inputs are identical.
inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

inline constexpr double kPeak = 1.0;
inline constexpr std::size_t kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

double mse(VecView a, VecView b);
double mse(const ImageGrid& a, const ImageGrid& b);

/// 10 log10(peak^2 / mse), or kPsnrIdentical when mse is zero.
double psnr_from_mse(double mse_value, double peak = kPeak);
double psnr(VecView a, VecView b, double peak = kPeak);
double psnr(const ImageGrid& a, const ImageGrid& b, double peak = kPeak);

/// Mean SSIM over every 11x11 window that fits inside the image
/// (Gaussian weights, sigma 1.5, C1 = (0.01 peak)^2, C2 = (0.03 peak)^2).
double ssim(const ImageGrid& a, const ImageGrid& b, double peak = kPeak);

/// 1 when the nearest component mean carries `true_label`. Ties go to the
/// lowest component index.
int class_accuracy(VecView reconstruction, const GaussianMixture& mixture,
                   const std::string& true_label);

/// Label of the nearest component mean (lowest index on ties).
const std::string& nearest_label(VecView x, const GaussianMixture& mixture);

struct MetricsReport {
  double mse = 0.0;
  double psnr_db = 0.0;
  std::optional<double> ssim;
  std::optional<int> class_accuracy;
  std::vector<double> distance_record;
};

}  // namespace pdls
