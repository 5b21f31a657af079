// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdls/cli/experiment.hpp"

namespace pdls::cli {

/// task,seed,input,config_hash,method,mse,psnr,ssim,class_acc,degraded_psnr
/// Missing optional values are empty cells; infinite PSNR is written "inf".
void write_metrics_header(std::ostream& os);
void write_metrics_row(std::ostream& os, const MetricsRow& row);
std::vector<MetricsRow> read_metrics_csv(std::istream& is, const std::string& name = "<csv>");
std::vector<MetricsRow> read_metrics_file(const std::string& path);

/// step,t,eta,target_node,dist_to_target,dist_after
void write_diagnostics_csv(std::ostream& os, const std::vector<SteeringStep>& steps);

/// path,t,x_0,...: the structural, semantic and steered trajectories.
void write_toy_paths_csv(std::ostream& os, const RestoreResult& result);

struct ToyPaths {
  std::vector<std::vector<double>> structural, semantic, steered;  // rows of (x_0, x_1)
};
ToyPaths read_toy_paths_csv(std::istream& is, const std::string& name = "<csv>");

struct MetricStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t count = 0;
};

struct AggregateRow {
  std::string task;
  std::string method;
  std::string config_hash;
  std::size_t n = 0;
  MetricStats psnr, ssim, class_acc;
};

/// Groups by (task, method, config_hash) in order of first appearance.
std::vector<AggregateRow> aggregate(const std::vector<MetricsRow>& rows);
void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& table);
/// Fixed-width text rendering for the terminal.
void print_aggregate(std::ostream& os, const std::vector<AggregateRow>& table);

/// Structural, semantic and steered paths as three polylines with a circle
/// at every node.
void write_toy_svg(std::ostream& os, const ToyPaths& paths, const std::vector<Vec>& means);

/// Rows of images side by side with a 2-pixel white gutter.
ImageGrid image_strip(const std::vector<std::vector<ImageGrid>>& rows);

struct ManifestEntry {
  std::string input;
  std::string label;
  std::uint64_t seed = 0;
  std::string clean;     // path relative to the manifest directory
  std::string observed;  // idem
  std::string op;        // operator descriptor
};

struct Manifest {
  std::string task;
  std::string dataset;
  double sigma_y = 0.0;
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<ManifestEntry> entries;
};

void write_manifest(std::ostream& os, const Manifest& manifest);
Manifest read_manifest(std::istream& is, const std::string& name = "<manifest>");

/// Formats with 17 significant digits, "inf"/"-inf"/"nan" for non-finite.
std::string format_number(double v);
double parse_number(const std::string& text);

}  // namespace pdls::cli
