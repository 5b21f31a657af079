// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/control.hpp"

#include <cmath>
#include <numbers>

namespace pdls {

void validate(const SteeringSchedule& schedule) {
  if (!(schedule.eta_max >= 0.0 && schedule.eta_max <= 1.0)) {
    throw InvalidArgument("eta_max must lie in [0, 1]");
  }
}

void validate(const ControlParams& params) {
  if (!(params.gamma >= 0.0 && params.gamma <= 1.0)) {
    throw InvalidArgument("gamma must lie in [0, 1]");
  }
  validate(params.schedule);
}

double eta(const SteeringSchedule& schedule, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("time out of range");
  validate(schedule);
  switch (schedule.kind) {
    case ScheduleKind::Constant:
      return schedule.eta_max;
    case ScheduleKind::CosineDecay:
      break;
  }
  return 0.5 * schedule.eta_max * (1.0 + std::cos(std::numbers::pi * t));
}

Vec lqr_control(VecView x, VecView target, double t, double time_clamp) {
  require_same_dim(x, target, "lqr_control");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("time out of range");
  const double remaining = 1.0 - t;
  if (remaining < time_clamp - kTimeSlack) throw NumericalError("terminal-time singularity");
  Vec c(x.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = (target[j] - x[j]) / remaining;
  return c;
}

Vec blend_drift(VecView base, VecView guided, double weight) {
  require_same_dim(base, guided, "blend_drift");
  if (!(weight >= 0.0 && weight <= 1.0)) throw InvalidArgument("blend weight must lie in [0, 1]");
  Vec out(base.size());
  if (weight == 1.0) {
    out.assign(guided.begin(), guided.end());
    return out;
  }
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = base[j] + weight * (guided[j] - base[j]);
  return out;
}

}  // namespace pdls
