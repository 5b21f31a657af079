// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "pdls/flowfield.hpp"
#include "pdls/vec.hpp"

namespace pdls {

enum class ScheduleKind { CosineDecay, Constant };

/// Guidance strength over time. `eta_max` must lie in [0, 1].
struct SteeringSchedule {
  double eta_max = 0.5;
  ScheduleKind kind = ScheduleKind::CosineDecay;
};

struct ControlParams {
  double gamma = 0.5;  // inversion controller strength, [0, 1]
  SteeringSchedule schedule;
  // Terminal-cost weight of the steering objective. The closed-form control
  // is its exact-terminal limit, so the value is carried but never read.
  double lambda_terminal = 1.0;
};

void validate(const SteeringSchedule& schedule);
void validate(const ControlParams& params);

/// eta(t) = eta_max / 2 * (1 + cos(pi t)) for the cosine schedule,
/// eta_max for the constant one.
double eta(const SteeringSchedule& schedule, double t);

/// Closed-form steering control (target - x) / (1 - t).
Vec lqr_control(VecView x, VecView target, double t, double time_clamp = kTimeClamp);

/// base + weight * (guided - base).
Vec blend_drift(VecView base, VecView guided, double weight);

}  // namespace pdls
