// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pdls/cli/config.hpp"
#include "pdls/cli/datasets.hpp"
#include "pdls/degrade.hpp"
#include "pdls/pdls.hpp"

namespace pdls::cli {

/// `shapes32` (or `builtin`) or a directory holding PGM files and a
/// labels.csv of `file,label` lines. `names` receives one identifier per image.
ExemplarSet load_dataset(const std::string& dataset, std::vector<std::string>* names = nullptr);

/// The two-cluster toy mixture for `builtin`/`toy2d`, otherwise a mixture file.
GaussianMixture load_toy_mixture(const std::string& dataset);

/// Operator for an image task on a width x height grid. `op` overrides the
/// task preset; inpaint masks are seeded with `seed`.
DegradationOperator task_operator(const std::string& task, const std::string& op,
                                  std::size_t width, std::size_t height, std::uint64_t seed);

/// Exemplar index used as ground truth for benchmark seed `seed`.
std::size_t bench_index(std::uint64_t seed, std::size_t set_size);

/// The prompt `spec` asks for, given the true label of the input.
Condition resolve_prompt(const std::string& prompt, const std::string& true_label);

/// Row label: "pdls" or "single-path" (eta_max = 0), plus "+key=value" for
/// every ablation knob away from its default.
std::string method_label(const PdlsConfig& config, const std::string& prompt);

struct MetricsRow {
  std::string task;
  std::uint64_t seed = 0;
  std::string input;
  std::string config_hash;
  std::string method;
  double mse = 0.0;
  double psnr = 0.0;
  std::optional<double> ssim;
  std::optional<int> class_acc;
  std::optional<double> degraded_psnr;
};

struct ImageCase {
  std::string input;
  std::string label;
  std::uint64_t seed = 0;
  ImageGrid clean;
  DegradationOperator op;
  ImageGrid observed;  // measurement, possibly smaller than clean
};

/// Degrades exemplar `index` with noise seeded by `seed`.
ImageCase make_image_case(const ExemplarSet& set, std::size_t index, const std::string& input,
                          const std::string& task, const std::string& op, double sigma_y,
                          std::uint64_t seed);

struct ImageOutcome {
  ImageGrid lifted;
  ImageGrid restored;
  double degraded_psnr = 0.0;
  double restored_psnr = 0.0;
  MetricsRow row;
  RestoreReport report;
};

ImageOutcome run_image_case(const ImageCase& c, const GaussianMixture& mixture,
                            const Condition& prompt, const PdlsConfig& config);

struct ToyOutcome {
  ToySample sample;
  RestoreResult result;
  MetricsRow row;
};

ToyOutcome run_toy_case(const GaussianMixture& mixture, std::uint64_t seed,
                        const Condition& prompt, const PdlsConfig& config);

/// Runs body(i) for i in [0, n) on up to `jobs` threads. If any call throws,
/// the exception of the lowest index is rethrown after all threads finish.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body);

}  // namespace pdls::cli
