// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pdls/pdls.hpp"

namespace pdls::cli {

/// Everything one degrade/restore/bench invocation needs. Each field is a
/// key of the flat config format and has a `--key` flag.
struct ExperimentSpec {
  std::string task = "toy2d";      // sr8 | mblur | gblur | inpaint | toy2d
  // builtin (shapes32 for image tasks, the two-cluster mixture for toy2d),
  // shapes32, toy2d, a directory of PGMs + labels.csv, or a mixture file (toy2d)
  std::string dataset = "builtin";
  std::string select = "all";        // all | per-seed (one benchmark image per seed)
  std::string op;                    // operator descriptor; empty means the task preset
  double sigma_y = kDefaultSigmaY;
  double variance = kExemplarVariance;
  std::string prompt = "auto";  // auto (true label) | null | A+B...
  PdlsConfig pdls;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  std::string manifest;
  std::vector<std::string> runs;
  std::string out = "pdls_out";
  std::size_t jobs = 1;
};

/// Keys in canonical order.
const std::vector<std::string>& config_keys();

/// Sets one key from its textual value; throws InvalidArgument for unknown
/// keys or unparsable values. `steps` is accepted for n_steps and `seed` for
/// a single-element seeds list.
void set_key(ExperimentSpec& spec, const std::string& key, const std::string& value);
std::string get_key(const ExperimentSpec& spec, const std::string& key);

/// Reads `key = value` lines; blank lines and `#` comments are ignored.
void load_config(ExperimentSpec& spec, std::istream& in, const std::string& name = "<config>");
void load_config_file(ExperimentSpec& spec, const std::string& path);

/// Canonical `key=value` lines of every key.
std::string dump_config(const ExperimentSpec& spec);

/// Checks value ranges and task/operator compatibility with the image size.
void validate(const ExperimentSpec& spec);

/// Parses "1-5,8,10-12".
std::vector<std::uint64_t> parse_seeds(const std::string& text);
std::string format_seeds(const std::vector<std::uint64_t>& seeds);

std::uint64_t fnv1a64(const std::string& bytes);

/// FNV-1a of the canonical listing of every key that influences results
/// (all keys except out, jobs, manifest and runs), as 16 hex digits.
std::string config_hash(const ExperimentSpec& spec);

bool is_image_task(const std::string& task);

}  // namespace pdls::cli
