// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/cli/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

#include "pdls/error.hpp"

namespace pdls::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument(key + ": expected a number, got '" + text + "'");
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw InvalidArgument(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) {
    cur = trim(cur);
    if (!cur.empty()) parts.push_back(cur);
  }
  return parts;
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "task",     "dataset",  "select",   "op",         "sigma_y", "variance", "prompt",
      "gamma",    "eta_max",  "n_steps",    "init",       "base",    "schedule", "time_clamp",
      "seeds",    "manifest", "runs",     "out",        "jobs"};
  return keys;
}

void set_key(ExperimentSpec& spec, const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  if (key == "task") {
    if (value != "toy2d" && !is_image_task(value)) {
      throw InvalidArgument("task must be sr8|mblur|gblur|inpaint|toy2d, got '" + value + "'");
    }
    spec.task = value;
  } else if (key == "dataset") {
    if (value.empty()) throw InvalidArgument("dataset must not be empty");
    spec.dataset = value;
  } else if (key == "select") {
    if (value != "all" && value != "per-seed") {
      throw InvalidArgument("select must be all|per-seed, got '" + value + "'");
    }
    spec.select = value;
  } else if (key == "op") {
    spec.op = value;
  } else if (key == "sigma_y") {
    spec.sigma_y = parse_double(key, value);
  } else if (key == "variance") {
    spec.variance = parse_double(key, value);
  } else if (key == "prompt") {
    if (value.empty()) throw InvalidArgument("prompt must not be empty");
    spec.prompt = value;
  } else if (key == "gamma") {
    spec.pdls.gamma = parse_double(key, value);
  } else if (key == "eta_max") {
    spec.pdls.eta_max = parse_double(key, value);
  } else if (key == "n_steps" || key == "steps") {
    spec.pdls.n_steps = parse_uint(key, value);
  } else if (key == "init") {
    spec.pdls.init_mode = parse_init_mode(value);
  } else if (key == "base") {
    spec.pdls.base_condition = parse_base_condition(value);
  } else if (key == "schedule") {
    spec.pdls.schedule = parse_schedule(value);
  } else if (key == "time_clamp") {
    spec.pdls.time_clamp = parse_double(key, value);
  } else if (key == "seeds" || key == "seed") {
    spec.seeds = parse_seeds(value);
  } else if (key == "manifest") {
    spec.manifest = value;
  } else if (key == "runs") {
    spec.runs = split(value, ',');
  } else if (key == "out") {
    if (value.empty()) throw InvalidArgument("out must not be empty");
    spec.out = value;
  } else if (key == "jobs") {
    spec.jobs = parse_uint(key, value);
    if (spec.jobs == 0) throw InvalidArgument("jobs must be at least 1");
  } else {
    throw InvalidArgument("unknown config key '" + key + "'");
  }
}

std::string get_key(const ExperimentSpec& spec, const std::string& key) {
  if (key == "task") return spec.task;
  if (key == "dataset") return spec.dataset;
  if (key == "select") return spec.select;
  if (key == "op") return spec.op;
  if (key == "sigma_y") return format_double(spec.sigma_y);
  if (key == "variance") return format_double(spec.variance);
  if (key == "prompt") return spec.prompt;
  if (key == "gamma") return format_double(spec.pdls.gamma);
  if (key == "eta_max") return format_double(spec.pdls.eta_max);
  if (key == "n_steps") return std::to_string(spec.pdls.n_steps);
  if (key == "init") return to_string(spec.pdls.init_mode);
  if (key == "base") return to_string(spec.pdls.base_condition);
  if (key == "schedule") return to_string(spec.pdls.schedule);
  if (key == "time_clamp") return format_double(spec.pdls.time_clamp);
  if (key == "seeds") return format_seeds(spec.seeds);
  if (key == "manifest") return spec.manifest;
  if (key == "runs") return join(spec.runs, ',');
  if (key == "out") return spec.out;
  if (key == "jobs") return std::to_string(spec.jobs);
  throw InvalidArgument("unknown config key '" + key + "'");
}

void load_config(ExperimentSpec& spec, std::istream& in, const std::string& name) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument(name + ":" + std::to_string(lineno) + ": expected key = value");
    }
    try {
      set_key(spec, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument(name + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

void load_config_file(ExperimentSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path);
  load_config(spec, in, path);
}

std::string dump_config(const ExperimentSpec& spec) {
  std::string out;
  for (const auto& key : config_keys()) out += key + "=" + get_key(spec, key) + "\n";
  return out;
}

bool is_image_task(const std::string& task) {
  return task == "sr8" || task == "mblur" || task == "gblur" || task == "inpaint";
}

void validate(const ExperimentSpec& spec) {
  validate(spec.pdls);
  if (spec.task != "toy2d" && !is_image_task(spec.task)) {
    throw InvalidArgument("task must be sr8|mblur|gblur|inpaint|toy2d, got '" + spec.task + "'");
  }
  if (!(spec.sigma_y >= 0.0)) throw InvalidArgument("sigma_y must be non-negative");
  if (!(spec.variance >= 0.0)) throw InvalidArgument("variance must be non-negative");
  if (spec.seeds.empty()) throw InvalidArgument("seeds must not be empty");
  if (spec.task == "toy2d" && spec.select != "all") {
    throw InvalidArgument("select applies to image tasks only");
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(text, ',')) {
    const auto dash = part.find('-');
    if (dash == std::string::npos) {
      seeds.push_back(parse_uint("seeds", part));
      continue;
    }
    const std::uint64_t lo = parse_uint("seeds", trim(part.substr(0, dash)));
    const std::uint64_t hi = parse_uint("seeds", trim(part.substr(dash + 1)));
    if (hi < lo) throw InvalidArgument("seeds: empty range '" + part + "'");
    if (hi - lo > 1000000) throw InvalidArgument("seeds: range too large '" + part + "'");
    for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  }
  if (seeds.empty()) throw InvalidArgument("seeds: no seeds in '" + text + "'");
  return seeds;
}

std::string format_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string out;
  std::size_t i = 0;
  while (i < seeds.size()) {
    std::size_t j = i;
    while (j + 1 < seeds.size() && seeds[j + 1] == seeds[j] + 1) ++j;
    if (!out.empty()) out += ',';
    out += std::to_string(seeds[i]);
    if (j > i) out += "-" + std::to_string(seeds[j]);
    i = j + 1;
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const ExperimentSpec& spec) {
  std::string canonical;
  for (const auto& key : config_keys()) {
    if (key == "out" || key == "jobs" || key == "manifest" || key == "runs") continue;
    canonical += key + "=" + get_key(spec, key) + "\n";
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical)));
  return buf;
}

}  // namespace pdls::cli
