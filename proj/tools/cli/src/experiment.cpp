// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/cli/experiment.hpp"

#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "pdls/cli/pgm.hpp"
#include "pdls/error.hpp"
#include "pdls/metrics.hpp"
#include "pdls/mixture_io.hpp"

namespace pdls::cli {

namespace fs = std::filesystem;

ExemplarSet load_dataset(const std::string& dataset, std::vector<std::string>* names) {
  if (dataset == "toy2d") throw InvalidArgument("toy2d is not an image dataset");
  if (dataset == "shapes32" || dataset == "builtin") {
    ExemplarSet set = shapes32();
    if (names) {
      names->clear();
      for (std::size_t i = 0; i < set.size(); ++i) {
        names->push_back(set.labels[i] + "_" + std::to_string(i));
      }
    }
    return set;
  }
  const fs::path dir(dataset);
  std::ifstream labels(dir / "labels.csv");
  if (!labels) throw IoError("dataset " + dataset + ": cannot open labels.csv");
  ExemplarSet set;
  std::vector<std::string> stems;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(labels, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || comma == 0 || comma + 1 == line.size()) {
      throw IoError("dataset " + dataset + ": labels.csv line " + std::to_string(lineno) +
                    ": expected file,label");
    }
    const std::string file = line.substr(0, comma);
    ImageGrid img = read_image((dir / file).string());
    if (set.images.empty()) {
      set.width = img.width();
      set.height = img.height();
    } else if (img.width() != set.width || img.height() != set.height) {
      throw IoError("dataset " + dataset + ": " + file + " has a different size");
    }
    set.images.push_back(std::move(img));
    set.labels.push_back(line.substr(comma + 1));
    stems.push_back(fs::path(file).stem().string());
  }
  if (set.images.empty()) throw IoError("dataset " + dataset + ": no images listed");
  if (names) *names = std::move(stems);
  return set;
}

GaussianMixture load_toy_mixture(const std::string& dataset) {
  if (dataset == "builtin" || dataset == "toy2d") return toy2d_mixture();
  if (dataset == "shapes32") throw InvalidArgument("toy2d needs a point mixture, not shapes32");
  return read_mixture_file(dataset);
}

DegradationOperator task_operator(const std::string& task, const std::string& op,
                                  std::size_t width, std::size_t height, std::uint64_t seed) {
  DegradationOperator result;
  if (!op.empty()) {
    result = parse_operator(op, width, height);
  } else if (task == "gblur") {
    result = kGaussianBlurPreset;
  } else if (task == "mblur") {
    result = kMotionBlurPreset;
  } else if (task == "sr8") {
    result = Downsample{8};
  } else if (task == "inpaint") {
    result = parse_operator("inpaint:seed=" + std::to_string(seed), width, height);
  } else {
    throw InvalidArgument("task '" + task + "' has no degradation operator");
  }
  validate(result, width, height);
  return result;
}

std::size_t bench_index(std::uint64_t seed, std::size_t set_size) {
  if (set_size == 0) throw InvalidArgument("bench_index: empty set");
  std::mt19937_64 rng(1000 + seed);
  return static_cast<std::size_t>(rng() % set_size);
}

Condition resolve_prompt(const std::string& prompt, const std::string& true_label) {
  if (prompt == "auto") return Condition::labels({true_label});
  if (prompt == "null") return Condition::null();
  std::set<std::string> labels;
  std::istringstream in(prompt);
  std::string part;
  while (std::getline(in, part, '+')) {
    if (part.empty()) throw InvalidArgument("prompt: empty label in '" + prompt + "'");
    labels.insert(part);
  }
  return Condition::labels(std::move(labels));
}

std::string method_label(const PdlsConfig& config, const std::string& prompt) {
  std::string label = config.eta_max == 0.0 ? "single-path" : "pdls";
  if (config.init_mode != InitMode::Structural) label += "+init=" + to_string(config.init_mode);
  if (config.base_condition != BaseCondition::UsePrompt) {
    label += "+base=" + to_string(config.base_condition);
  }
  if (config.schedule != ScheduleKind::CosineDecay) label += "+schedule=" + to_string(config.schedule);
  if (prompt != "auto") label += "+prompt=" + prompt;
  return label;
}

ImageCase make_image_case(const ExemplarSet& set, std::size_t index, const std::string& input,
                          const std::string& task, const std::string& op, double sigma_y,
                          std::uint64_t seed) {
  if (index >= set.size()) throw InvalidArgument("make_image_case: index out of range");
  ImageCase c;
  c.input = input;
  c.label = set.labels[index];
  c.seed = seed;
  c.clean = set.images[index];
  c.op = task_operator(task, op, set.width, set.height, seed);
  c.observed = apply(c.op, c.clean, NoiseModel{sigma_y, seed});
  return c;
}

ImageOutcome run_image_case(const ImageCase& c, const GaussianMixture& mixture,
                            const Condition& prompt, const PdlsConfig& config) {
  ImageOutcome out{lift(c.op, c.observed, c.clean.width(), c.clean.height()), ImageGrid{}, 0.0,
                   0.0, MetricsRow{}, RestoreReport{}};
  ImageRestoreResult r = restore(c.observed, c.op, c.clean.width(), c.clean.height(), mixture,
                                 prompt, config, c.seed);
  out.restored = std::move(r.image);
  out.degraded_psnr = psnr(out.lifted, c.clean);
  out.restored_psnr = psnr(out.restored, c.clean);
  out.row.seed = c.seed;
  out.row.input = c.input;
  out.row.mse = mse(out.restored, c.clean);
  out.row.psnr = out.restored_psnr;
  out.row.ssim = ssim(out.restored, c.clean);
  out.row.class_acc = class_accuracy(out.restored.view(), mixture, c.label);
  out.row.degraded_psnr = out.degraded_psnr;
  out.report = std::move(r.detail.report);
  return out;
}

ToyOutcome run_toy_case(const GaussianMixture& mixture, std::uint64_t seed,
                        const Condition& prompt, const PdlsConfig& config) {
  ToySample sample = toy2d_sample(mixture, seed);
  RestoreResult result = restore(sample.observed, mixture, prompt, config, seed);
  MetricsRow row;
  row.task = "toy2d";
  row.seed = seed;
  row.input = "toy";
  row.mse = mse(result.output, sample.clean);
  row.psnr = psnr(result.output, sample.clean);
  row.class_acc = class_accuracy(result.output, mixture, sample.label);
  row.degraded_psnr = psnr(sample.observed, sample.clean);
  return ToyOutcome{std::move(sample), std::move(result), std::move(row)};
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min(std::max<std::size_t>(jobs, 1), std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace pdls::cli
