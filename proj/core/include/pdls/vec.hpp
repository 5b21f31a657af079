// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "pdls/error.hpp"

namespace pdls {

/// Dense state vector. Images are flattened row-major.
using Vec = std::vector<double>;
using VecView = std::span<const double>;

inline void require_same_dim(VecView a, VecView b, const char* what) {
  if (a.size() != b.size()) {
    throw InvalidArgument(std::string(what) + ": dimension mismatch (" + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()) + ")");
  }
}

inline double squared_distance(VecView a, VecView b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

inline double distance(VecView a, VecView b) { return std::sqrt(squared_distance(a, b)); }

inline double norm(VecView a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

inline bool all_finite(VecView a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

/// Element-wise midpoint.
inline Vec midpoint(VecView a, VecView b) {
  require_same_dim(a, b, "midpoint");
  Vec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = 0.5 * (a[i] + b[i]);
  return out;
}

}  // namespace pdls
