// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/integrate.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace pdls {

TimeGrid::TimeGrid(std::size_t n_steps, double t_start, double t_end, double time_clamp)
    : n_steps_(n_steps), clamp_(time_clamp) {
  if (n_steps == 0) throw InvalidArgument("time grid needs at least one step");
  if (!(t_start >= 0.0 && t_start <= 1.0) || !(t_end >= 0.0 && t_end <= 1.0)) {
    throw InvalidArgument("time out of range");
  }
  if (t_start == t_end) throw InvalidArgument("time grid has zero length");
  if (!(time_clamp >= 0.0 && time_clamp < 0.5)) throw InvalidArgument("time clamp out of range");
  nodes_.resize(n_steps + 1);
  const double n = static_cast<double>(n_steps);
  for (std::size_t k = 0; k <= n_steps; ++k) {
    const double kk = static_cast<double>(k);
    nodes_[k] = (t_start * (n - kk) + t_end * kk) / n;
  }
}

double TimeGrid::eval_time(std::size_t k) const {
  return std::clamp(nodes_.at(k), clamp_, 1.0 - clamp_);
}

TimeGrid TimeGrid::reversed() const {
  return TimeGrid(n_steps_, nodes_.back(), nodes_.front(), clamp_);
}

TimeGrid make_grid(std::size_t n_steps, double t_start, double t_end, double time_clamp) {
  return TimeGrid(n_steps, t_start, t_end, time_clamp);
}

Trajectory integrate(VecView x0, const TimeGrid& grid, const DriftFn& drift) {
  if (!all_finite(x0)) throw InvalidArgument("initial state is not finite");
  Trajectory traj{grid, {}};
  traj.states.reserve(grid.size());
  traj.states.emplace_back(x0.begin(), x0.end());
  for (std::size_t k = 0; k < grid.n_steps(); ++k) {
    const Vec& x = traj.states.back();
    const Vec v = drift(LatentState{x, grid.eval_time(k)}, k);
    if (v.size() != x.size()) {
      throw InvalidArgument("drift returned dimension " + std::to_string(v.size()) +
                            ", expected " + std::to_string(x.size()));
    }
    const double dt = grid.step(k);
    Vec next(x.size());
    for (std::size_t j = 0; j < next.size(); ++j) next[j] = x[j] + dt * v[j];
    if (!all_finite(v) || !all_finite(next)) {
      throw NumericalError("drift diverged at step " + std::to_string(k));
    }
    traj.states.push_back(std::move(next));
  }
  return traj;
}

void write_csv(std::ostream& os, const Trajectory& trajectory) {
  const auto old_precision = os.precision(17);
  os << 't';
  for (std::size_t j = 0; j < trajectory.dim(); ++j) os << ",x_" << j;
  os << '\n';
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    os << trajectory.grid.node(k);
    for (double v : trajectory.states[k]) os << ',' << v;
    os << '\n';
  }
  os.precision(old_precision);
}

}  // namespace pdls
