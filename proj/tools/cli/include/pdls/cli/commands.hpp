// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <vector>

#include "pdls/cli/config.hpp"
#include "pdls/cli/report.hpp"

namespace pdls::cli {

/// Writes clean/, observed/ and manifest.txt under spec.out.
Manifest cmd_degrade(const ExperimentSpec& spec, std::ostream& log);

/// Restores every manifest entry (image tasks) or every seed (toy2d) and
/// writes metrics.csv, entries.csv, diagnostics/ and recon/ or paths/.
std::vector<MetricsRow> cmd_restore(const ExperimentSpec& spec, std::ostream& log);

/// Aggregates the metrics.csv of every run in spec.runs into summary.csv and
/// draws one plot per run (SVG for toy2d, PGM strip for images). Missing
/// runs are listed and raise IoError.
std::vector<AggregateRow> cmd_bench(const ExperimentSpec& spec, std::ostream& log);

/// toy2d and shapes32/gblur end to end, then bench over both.
void cmd_demo(const ExperimentSpec& spec, std::ostream& log);

/// Process entry point: 0 ok, 2 config error, 3 numerical failure, 4 I/O.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pdls::cli
