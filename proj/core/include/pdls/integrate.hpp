// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "pdls/flowfield.hpp"
#include "pdls/vec.hpp"

namespace pdls {

/// Uniform grid over [t_start, t_end] (either direction).
///
/// Nodes are exact uniform fractions of the interval, computed as
/// (t_start * (n - k) + t_end * k) / n so that an ascending grid and its
/// reversal share bit-identical node times. Drift callbacks receive
/// `eval_time(k)`, the node clamped into [clamp, 1 - clamp], which keeps field
/// evaluations away from the singular ends while step lengths stay exact.
class TimeGrid {
 public:
  TimeGrid(std::size_t n_steps, double t_start, double t_end, double time_clamp = kTimeClamp);

  std::size_t n_steps() const { return n_steps_; }
  std::size_t size() const { return nodes_.size(); }
  double t_start() const { return nodes_.front(); }
  double t_end() const { return nodes_.back(); }
  bool ascending() const { return nodes_.back() > nodes_.front(); }
  double time_clamp() const { return clamp_; }

  double node(std::size_t k) const { return nodes_.at(k); }
  const std::vector<double>& nodes() const { return nodes_; }
  double eval_time(std::size_t k) const;
  /// Signed step from node k to node k + 1.
  double step(std::size_t k) const { return nodes_.at(k + 1) - nodes_.at(k); }

  /// The same nodes in the opposite order.
  TimeGrid reversed() const;

 private:
  std::size_t n_steps_;
  double clamp_;
  std::vector<double> nodes_;
};

TimeGrid make_grid(std::size_t n_steps, double t_start, double t_end,
                   double time_clamp = kTimeClamp);

struct Trajectory {
  TimeGrid grid;
  std::vector<Vec> states;

  const Vec& terminal() const { return states.back(); }
  std::size_t dim() const { return states.front().size(); }
};

using DriftFn = std::function<Vec(const LatentState& state, std::size_t step_index)>;

/// Explicit Euler: x_{k+1} = x_k + (t_{k+1} - t_k) * drift(x_k, eval_time(k), k).
Trajectory integrate(VecView x0, const TimeGrid& grid, const DriftFn& drift);

/// One row per node: t, x_0 .. x_{d-1}.
void write_csv(std::ostream& os, const Trajectory& trajectory);

}  // namespace pdls
