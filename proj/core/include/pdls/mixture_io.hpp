// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>

#include "pdls/flowfield.hpp"

namespace pdls {

/// Plain-text mixture definition, one component per line:
///
///   # comment
///   component weight=0.5 variance=0.05 label=A mean=2,0
///
/// Fields may appear in any order; all four are required. Syntax errors
/// raise IoError with the line number; an invalid mixture (weights not
/// summing to one, ragged means) raises InvalidArgument.
GaussianMixture read_mixture(std::istream& in, const std::string& name = "<mixture>");
GaussianMixture read_mixture_file(const std::string& path);

/// Writes every number with 17 significant digits, so read_mixture gives
/// back the same doubles.
void write_mixture(std::ostream& out, const GaussianMixture& mixture);

}  // namespace pdls
