// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pdls/cli/experiment.hpp"
#include "pdls/cli/pgm.hpp"
#include "pdls/error.hpp"
#include "pdls/metrics.hpp"
#include "pdls/mixture_io.hpp"

namespace pdls::cli {

namespace fs = std::filesystem;

namespace {

void make_dirs(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

// Rethrows the in-flight exception with `where` prepended, keeping its type.
[[noreturn]] void rethrow_with(const std::string& where) {
  try {
    throw;
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(where + ": " + e.what());
  } catch (const NumericalError& e) {
    throw NumericalError(where + ": " + e.what());
  } catch (const IoError& e) {
    throw IoError(where + ": " + e.what());
  } catch (const fs::filesystem_error& e) {
    throw IoError(where + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(where + ": " + e.what());
  }
}

std::string case_name(const std::string& input, std::uint64_t seed) {
  return input + "_s" + std::to_string(seed);
}

std::vector<MetricsRow> restore_toy(const ExperimentSpec& spec, std::ostream& log) {
  const fs::path out(spec.out);
  make_dirs(out / "paths");
  make_dirs(out / "diagnostics");
  const GaussianMixture mixture = load_toy_mixture(spec.dataset);
  {
    auto os = open_out(out / "mixture.txt");
    write_mixture(os, mixture);
  }
  const std::string hash = config_hash(spec);
  const std::string method = method_label(spec.pdls, spec.prompt);
  std::vector<MetricsRow> rows(spec.seeds.size());
  parallel_for(spec.seeds.size(), spec.jobs, [&](std::size_t i) {
    const std::uint64_t seed = spec.seeds[i];
    try {
      const ToySample probe = toy2d_sample(mixture, seed);
      ToyOutcome o = run_toy_case(mixture, seed, resolve_prompt(spec.prompt, probe.label), spec.pdls);
      o.row.config_hash = hash;
      o.row.method = method;
      const std::string name = case_name("toy", seed);
      auto paths = open_out(out / "paths" / (name + ".csv"));
      write_toy_paths_csv(paths, o.result);
      auto diag = open_out(out / "diagnostics" / (name + ".csv"));
      write_diagnostics_csv(diag, o.result.report.steps);
      rows[i] = std::move(o.row);
    } catch (...) {
      rethrow_with("toy2d seed " + std::to_string(seed));
    }
  });
  log << "restored " << rows.size() << " toy2d seeds into " << spec.out << '\n';
  return rows;
}

// Updates `spec` with the measurement settings recorded in the manifest.
std::vector<MetricsRow> restore_images(ExperimentSpec& spec, std::ostream& log) {
  if (spec.manifest.empty()) throw InvalidArgument("restore of an image task needs --manifest");
  std::ifstream in(spec.manifest);
  if (!in) throw IoError("cannot open manifest " + spec.manifest);
  const Manifest manifest = read_manifest(in, spec.manifest);
  const fs::path base = fs::path(spec.manifest).parent_path();
  // The measurement side of the experiment is whatever the manifest says.
  spec.task = manifest.task;
  spec.dataset = manifest.dataset;
  spec.sigma_y = manifest.sigma_y;
  if (!manifest.entries.empty() &&
      std::all_of(manifest.entries.begin(), manifest.entries.end(),
                  [&](const ManifestEntry& e) { return e.op == manifest.entries[0].op; })) {
    spec.op = manifest.entries[0].op;
  } else {
    spec.op = "per-entry";
  }
  validate(spec);

  const ExemplarSet set = load_dataset(manifest.dataset);
  if (set.width != manifest.width || set.height != manifest.height) {
    throw InvalidArgument("manifest image size does not match dataset " + manifest.dataset);
  }
  const GaussianMixture mixture = set.mixture(spec.variance);
  const fs::path out(spec.out);
  make_dirs(out / "recon");
  make_dirs(out / "diagnostics");
  const std::string hash = config_hash(spec);
  const std::string method = method_label(spec.pdls, spec.prompt);

  std::vector<MetricsRow> rows(manifest.entries.size());
  parallel_for(manifest.entries.size(), spec.jobs, [&](std::size_t i) {
    const ManifestEntry& e = manifest.entries[i];
    const std::string name = case_name(e.input, e.seed);
    try {
      ImageCase c;
      c.input = e.input;
      c.label = e.label;
      c.seed = e.seed;
      c.clean = read_image((base / e.clean).string());
      c.observed = read_image((base / e.observed).string());
      c.op = parse_operator(e.op, manifest.width, manifest.height);
      ImageOutcome o = run_image_case(c, mixture, resolve_prompt(spec.prompt, e.label), spec.pdls);
      o.row.task = manifest.task;
      o.row.config_hash = hash;
      o.row.method = method;
      write_image((out / "recon" / (name + ".pgm")).string(), o.restored);
      auto diag = open_out(out / "diagnostics" / (name + ".csv"));
      write_diagnostics_csv(diag, o.report.steps);
      rows[i] = std::move(o.row);
    } catch (...) {
      rethrow_with("input " + e.input + " seed " + std::to_string(e.seed));
    }
  });

  auto entries = open_out(out / "entries.csv");
  entries << "input,seed,clean,observed,recon\n";
  for (const auto& e : manifest.entries) {
    entries << e.input << ',' << e.seed << ',' << fs::absolute(base / e.clean).string() << ','
            << fs::absolute(base / e.observed).string() << ','
            << fs::absolute(out / "recon" / (case_name(e.input, e.seed) + ".pgm")).string()
            << '\n';
  }
  log << "restored " << rows.size() << " " << manifest.task << " entries into " << spec.out
      << '\n';
  return rows;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) f.push_back(cell);
  return f;
}

void plot_run(const fs::path& run, const fs::path& out, const std::string& name,
              const std::vector<MetricsRow>& rows, std::ostream& log) {
  if (rows.empty()) return;
  if (rows.front().task == "toy2d") {
    const auto first = std::min_element(rows.begin(), rows.end(),
                                        [](const auto& a, const auto& b) { return a.seed < b.seed; });
    const fs::path src = run / "paths" / (case_name("toy", first->seed) + ".csv");
    std::ifstream in(src);
    if (!in) throw IoError("missing path file " + src.string());
    const ToyPaths paths = read_toy_paths_csv(in, src.string());
    const GaussianMixture mixture = read_mixture_file((run / "mixture.txt").string());
    if (mixture.dim() != 2) {
      log << "skipping plot of " << run.string() << ": mixture is not 2-D\n";
      return;
    }
    std::vector<Vec> means;
    for (const auto& c : mixture.components()) means.push_back(c.mean);
    const fs::path svg = out / (name + "_toy2d.svg");
    auto os = open_out(svg);
    write_toy_svg(os, paths, means);
    log << "wrote " << svg.string() << '\n';
    return;
  }
  std::ifstream in(run / "entries.csv");
  if (!in) return;
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<ImageGrid>> strip_rows;
  while (strip_rows.size() < 8 && std::getline(in, line)) {
    const auto f = split_csv_line(line);
    if (f.size() != 5) throw IoError((run / "entries.csv").string() + ": malformed line");
    const ImageGrid clean = read_image(f[2]);
    const ImageGrid observed = read_image(f[3]);
    const ImageGrid recon = read_image(f[4]);
    // Show low-resolution measurements at full size.
    ImageGrid shown = observed;
    if (!observed.same_shape(clean) && clean.width() % observed.width() == 0 &&
        clean.height() % observed.height() == 0) {
      shown = lift(Downsample{clean.width() / observed.width()}, observed, clean.width(),
                   clean.height());
    }
    strip_rows.push_back({clean, shown, recon});
  }
  const fs::path pgm = out / (name + "_strip.pgm");
  write_image(pgm.string(), image_strip(strip_rows));
  log << "wrote " << pgm.string() << " (columns: clean, observed, restored)\n";
}

using Overrides = std::map<std::string, std::string>;

void add_config_flags(CLI::App* sub, Overrides& overrides, std::string& config_path) {
  sub->add_option("--config", config_path, "flat key=value config file");
  for (const auto& key : config_keys()) {
    std::string names = "--" + key;
    std::string dashed = key;
    std::replace(dashed.begin(), dashed.end(), '_', '-');
    if (dashed != key) names += ",--" + dashed;
    sub->add_option_function<std::string>(
        names, [&overrides, key](const std::string& v) { overrides[key] = v; },
        "override config key '" + key + "'");
  }
}

ExperimentSpec build_spec(const std::string& config_path, const Overrides& overrides) {
  ExperimentSpec spec;
  if (!config_path.empty()) load_config_file(spec, config_path);
  for (const auto& [key, value] : overrides) set_key(spec, key, value);
  return spec;
}

}  // namespace

Manifest cmd_degrade(const ExperimentSpec& spec, std::ostream& log) {
  validate(spec);
  if (!is_image_task(spec.task)) {
    throw InvalidArgument("degrade needs an image task (sr8|mblur|gblur|inpaint); toy2d "
                          "observations are drawn by restore");
  }
  std::vector<std::string> names;
  const ExemplarSet set = load_dataset(spec.dataset, &names);
  // Fail on an incompatible operator before touching the disk.
  task_operator(spec.task, spec.op, set.width, set.height, spec.seeds.front());

  const fs::path out(spec.out);
  make_dirs(out / "clean");
  make_dirs(out / "observed");

  Manifest manifest;
  manifest.task = spec.task;
  manifest.dataset = spec.dataset == "shapes32" || spec.dataset == "builtin"
                         ? std::string("shapes32")
                         : fs::absolute(spec.dataset).string();
  manifest.sigma_y = spec.sigma_y;
  manifest.width = set.width;
  manifest.height = set.height;

  struct Job {
    std::size_t index;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::uint64_t seed : spec.seeds) {
    if (spec.select == "per-seed") {
      jobs.push_back({bench_index(seed, set.size()), seed});
    } else {
      for (std::size_t i = 0; i < set.size(); ++i) jobs.push_back({i, seed});
    }
  }

  // Seeds share clean files, so those are written once, up front.
  std::vector<bool> used(set.size(), false);
  for (const auto& job : jobs) used[job.index] = true;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (used[i]) write_image((out / "clean" / (names[i] + ".pgm")).string(), set.images[i]);
  }

  std::vector<ManifestEntry> entries(jobs.size());
  parallel_for(jobs.size(), spec.jobs, [&](std::size_t j) {
    const auto [index, seed] = jobs[j];
    const std::string& input = names[index];
    try {
      const ImageCase c =
          make_image_case(set, index, input, spec.task, spec.op, spec.sigma_y, seed);
      const std::string clean_rel = "clean/" + input + ".pgm";
      const std::string obs_rel = "observed/" + case_name(input, seed) + ".pgm";
      write_image((out / obs_rel).string(), c.observed);
      entries[j] = ManifestEntry{input, c.label, seed, clean_rel, obs_rel, describe(c.op)};
    } catch (...) {
      rethrow_with("input " + input + " seed " + std::to_string(seed));
    }
  });
  manifest.entries = std::move(entries);

  auto os = open_out(out / "manifest.txt");
  write_manifest(os, manifest);
  write_text(out / "config.txt", dump_config(spec));
  log << "degraded " << manifest.entries.size() << " images (" << spec.task << ", sigma_y "
      << spec.sigma_y << ") into " << spec.out << '\n';
  return manifest;
}

std::vector<MetricsRow> cmd_restore(const ExperimentSpec& requested, std::ostream& log) {
  validate(requested);
  ExperimentSpec spec = requested;
  make_dirs(spec.out);
  const bool toy = spec.task == "toy2d" && spec.manifest.empty();
  std::vector<MetricsRow> rows = toy ? restore_toy(spec, log) : restore_images(spec, log);
  auto os = open_out(fs::path(spec.out) / "metrics.csv");
  write_metrics_header(os);
  for (const auto& r : rows) write_metrics_row(os, r);
  write_text(fs::path(spec.out) / "config.txt", dump_config(spec));
  return rows;
}

std::vector<AggregateRow> cmd_bench(const ExperimentSpec& spec, std::ostream& log) {
  if (spec.runs.empty()) throw InvalidArgument("bench needs --runs dir[,dir...]");
  std::vector<std::string> missing;
  for (const auto& run : spec.runs) {
    if (!fs::is_regular_file(fs::path(run) / "metrics.csv")) missing.push_back(run);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) {
      log << "missing run: " << m << '\n';
      list += (list.empty() ? "" : ", ") + m;
    }
    throw IoError("missing runs: " + list);
  }
  const fs::path out(spec.out);
  make_dirs(out);
  std::vector<MetricsRow> all;
  for (const auto& run : spec.runs) {
    const auto rows = read_metrics_file((fs::path(run) / "metrics.csv").string());
    std::string name = fs::path(run).lexically_normal().filename().string();
    if (name.empty()) name = fs::path(run).lexically_normal().parent_path().filename().string();
    plot_run(run, out, name, rows, log);
    all.insert(all.end(), rows.begin(), rows.end());
  }
  const auto table = aggregate(all);
  auto os = open_out(out / "summary.csv");
  write_aggregate_csv(os, table);
  print_aggregate(log, table);
  return table;
}

void cmd_demo(const ExperimentSpec& spec, std::ostream& log) {
  const fs::path root(spec.out);
  const bool image_dataset = spec.dataset != "builtin" && spec.dataset != "toy2d" &&
                             fs::is_directory(spec.dataset);
  ExperimentSpec toy = spec;
  toy.task = "toy2d";
  if (image_dataset || spec.dataset == "shapes32") toy.dataset = "builtin";
  toy.select = "all";
  toy.out = (root / "toy2d").string();
  cmd_restore(toy, log);

  ExperimentSpec deg = spec;
  deg.task = is_image_task(spec.task) ? spec.task : "gblur";
  deg.dataset = image_dataset ? spec.dataset : "shapes32";
  deg.select = "per-seed";
  deg.out = (root / "degraded").string();
  cmd_degrade(deg, log);

  ExperimentSpec res = deg;
  res.manifest = (root / "degraded" / "manifest.txt").string();
  res.out = (root / deg.task).string();
  cmd_restore(res, log);

  ExperimentSpec bench = spec;
  bench.runs = {toy.out, res.out};
  bench.out = (root / "bench").string();
  cmd_bench(bench, log);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Posterior-steered dual-path latent restoration on exact flow fields", "pdls"};
  app.require_subcommand(1);
  Overrides overrides;
  std::string config_path;
  struct Sub {
    CLI::App* app;
    const char* name;
  };
  std::vector<Sub> subs{
      {app.add_subcommand("degrade", "apply a degradation to a dataset and write a manifest"),
       "degrade"},
      {app.add_subcommand("restore", "restore manifest entries or toy2d seeds"), "restore"},
      {app.add_subcommand("bench", "aggregate completed restore runs and draw plots"), "bench"},
      {app.add_subcommand("demo", "toy2d and shapes32 end to end"), "demo"}};
  for (auto& s : subs) add_config_flags(s.app, overrides, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "pdls: " << e.what() << '\n';
    return 2;
  }

  try {
    const ExperimentSpec spec = build_spec(config_path, overrides);
    if (subs[0].app->parsed()) cmd_degrade(spec, out);
    if (subs[1].app->parsed()) cmd_restore(spec, out);
    if (subs[2].app->parsed()) cmd_bench(spec, out);
    if (subs[3].app->parsed()) cmd_demo(spec, out);
    return 0;
  } catch (const InvalidArgument& e) {
    err << "pdls: config error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "pdls: numerical failure: " << e.what() << '\n';
    return 3;
  } catch (const IoError& e) {
    err << "pdls: I/O error: " << e.what() << '\n';
    return 4;
  } catch (const fs::filesystem_error& e) {
    err << "pdls: I/O error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    err << "pdls: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace pdls::cli
