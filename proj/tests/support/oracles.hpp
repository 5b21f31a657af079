// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

// Independent reference computations for the tests. Nothing here calls into
// the library code under test beyond the plain data types.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pdls/flowfield.hpp"
#include "pdls/image_grid.hpp"

namespace pdls::testing {

/// Monte-Carlo estimate of the marginal velocity at (x, t) from `samples`
/// importance-weighted draws of X1: E[X1 | X_t = x] weights each X1 by the
/// density of X_t = (1 - t) X0 + t X1 at x given X1, N(x; t X1, (1 - t)^2 I).
/// Only Gaussian sampling and density evaluation are used; the normals come
/// from a randomly shifted Halton sequence (seeded), which keeps the
/// estimator unbiased in expectation with far less noise than plain draws in
/// low dimension. Needs t > 0 and positive component variances.
Vec mc_velocity(VecView x, double t, const GaussianMixture& mixture, std::size_t samples,
                std::uint64_t seed);

/// Responsibilities by direct (non log-space) evaluation of the component
/// densities N(x; t mu_k, ((1 - t)^2 + t^2 var_k) I).
std::vector<double> direct_responsibilities(VecView x, double t, const GaussianMixture& mixture);

/// Exact flow of N(0, I) -> N(m, var I): x(t) = t m + sqrt((1-t)^2 + t^2 var) z,
/// where z = x(0).
Vec gaussian_flow(VecView z, VecView m, double var, double t);

/// SSIM with a full 2-D 11x11 Gaussian window summed pixel by pixel over
/// every valid window position.
double naive_ssim(const ImageGrid& a, const ImageGrid& b);

/// Multivariate normal draw N(mean, var I).
Vec normal_draw(VecView mean, double var, std::mt19937_64& rng);

/// One-sided sign test: P(Binomial(n, 1/2) >= k).
double binomial_tail(std::size_t k, std::size_t n);

}  // namespace pdls::testing
