// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/pdls.hpp"

#include <random>

namespace pdls {

void validate(const PdlsConfig& config) {
  validate(ControlParams{config.gamma, config.steering(), 1.0});
  if (config.n_steps == 0) throw InvalidArgument("n_steps must be at least 1");
  if (!(config.time_clamp >= 0.0 && config.time_clamp < 0.5)) {
    throw InvalidArgument("time clamp out of range");
  }
}

std::string to_string(InitMode mode) {
  switch (mode) {
    case InitMode::Structural: return "structural";
    case InitMode::Semantic: return "semantic";
    case InitMode::Mixed: return "mixed";
  }
  return "?";
}

std::string to_string(BaseCondition base) {
  switch (base) {
    case BaseCondition::UsePrompt: return "prompt";
    case BaseCondition::UseNull: return "null";
    case BaseCondition::None: return "none";
  }
  return "?";
}

std::string to_string(ScheduleKind kind) {
  return kind == ScheduleKind::Constant ? "constant" : "cosine";
}

InitMode parse_init_mode(const std::string& text) {
  if (text == "structural") return InitMode::Structural;
  if (text == "semantic") return InitMode::Semantic;
  if (text == "mixed") return InitMode::Mixed;
  throw InvalidArgument("init must be structural|semantic|mixed, got '" + text + "'");
}

BaseCondition parse_base_condition(const std::string& text) {
  if (text == "prompt") return BaseCondition::UsePrompt;
  if (text == "null") return BaseCondition::UseNull;
  if (text == "none") return BaseCondition::None;
  throw InvalidArgument("base must be prompt|null|none, got '" + text + "'");
}

ScheduleKind parse_schedule(const std::string& text) {
  if (text == "cosine") return ScheduleKind::CosineDecay;
  if (text == "constant") return ScheduleKind::Constant;
  throw InvalidArgument("schedule must be cosine|constant, got '" + text + "'");
}

Vec draw_noise(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec z(dim);
  for (double& v : z) v = gauss(rng);
  return z;
}

TimeGrid inversion_grid(std::size_t n_steps, double time_clamp) {
  return TimeGrid(n_steps, 1.0, 0.0, time_clamp);
}

TimeGrid generation_grid(std::size_t n_steps, double time_clamp) {
  return TimeGrid(n_steps, 0.0, 1.0, time_clamp);
}

Trajectory invert_path(VecView observed, const GaussianMixture& mixture, const Condition& cond,
                       double gamma, std::size_t n_steps, VecView z0, double time_clamp) {
  if (observed.size() != mixture.dim()) throw InvalidArgument("observation dimension mismatch");
  require_same_dim(observed, z0, "invert_path");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma must lie in [0, 1]");
  // Fail early on bad labels rather than inside the first step.
  cond.select(mixture);
  const TimeGrid grid = inversion_grid(n_steps, time_clamp);
  return integrate(observed, grid, [&](const LatentState& s, std::size_t) -> Vec {
    if (gamma == 1.0) return endpoint_conditional_velocity(s, z0, EndpointTime::Noise, time_clamp);
    Vec base = marginal_velocity(s.x, s.t, mixture, cond, time_clamp);
    if (gamma == 0.0) return base;
    const Vec guided = endpoint_conditional_velocity(s, z0, EndpointTime::Noise, time_clamp);
    return blend_drift(base, guided, gamma);
  });
}

Trajectory invert_path(VecView observed, const GaussianMixture& mixture, const Condition& cond,
                       double gamma, std::size_t n_steps, std::uint64_t noise_seed,
                       double time_clamp) {
  const Vec z0 = draw_noise(observed.size(), noise_seed);
  return invert_path(observed, mixture, cond, gamma, n_steps, z0, time_clamp);
}

DualPaths dual_invert(VecView observed, const GaussianMixture& mixture, const Condition& prompt,
                      const PdlsConfig& config, std::uint64_t noise_seed) {
  validate(config);
  Vec z0 = draw_noise(observed.size(), noise_seed);
  Trajectory structural = invert_path(observed, mixture, Condition::null(), config.gamma,
                                      config.n_steps, z0, config.time_clamp);
  // A null prompt degenerates to single-path inversion.
  Trajectory semantic = prompt.is_null()
                            ? structural
                            : invert_path(observed, mixture, prompt, config.gamma, config.n_steps,
                                          z0, config.time_clamp);
  return DualPaths{std::move(structural), std::move(semantic), prompt, std::move(z0)};
}

Vec averaged_target(const DualPaths& paths, std::size_t node_index) {
  if (node_index >= paths.structural.states.size() || node_index >= paths.semantic.states.size()) {
    throw InvalidArgument("averaged_target: node index " + std::to_string(node_index) +
                          " out of range");
  }
  return midpoint(paths.structural.states[node_index], paths.semantic.states[node_index]);
}

Vec noise_end_latent(const Trajectory& inversion) { return inversion.terminal(); }

Vec initial_latent(const DualPaths& paths, InitMode mode) {
  switch (mode) {
    case InitMode::Structural: return noise_end_latent(paths.structural);
    case InitMode::Semantic: return noise_end_latent(paths.semantic);
    case InitMode::Mixed:
      return midpoint(noise_end_latent(paths.structural), noise_end_latent(paths.semantic));
  }
  throw InvalidArgument("unknown init mode");
}

Generation steered_generate(const DualPaths& paths, const GaussianMixture& mixture,
                            const PdlsConfig& config) {
  validate(config);
  const std::size_t n = config.n_steps;
  if (paths.structural.grid.n_steps() != n || paths.semantic.grid.n_steps() != n) {
    throw InvalidArgument("stored paths do not match the configured step count");
  }
  const TimeGrid grid = generation_grid(n, config.time_clamp);
  const TimeGrid& stored = paths.structural.grid;
  const SteeringSchedule schedule = config.steering();
  const Condition base_cond =
      config.base_condition == BaseCondition::UseNull ? Condition::null() : paths.condition;

  std::vector<SteeringStep> steps;
  std::vector<Vec> targets;
  steps.reserve(n);
  targets.reserve(n);
  const Vec x0 = initial_latent(paths, config.init_mode);

  Trajectory traj = integrate(x0, grid, [&](const LatentState& s, std::size_t k) -> Vec {
    const std::size_t node = n - k;
    // Reverse step k reads the stored node at the same time; never interpolate.
    if (stored.node(node) != grid.node(k) || paths.semantic.grid.node(node) != grid.node(k)) {
      throw NumericalError("stored path node does not align with reverse step " +
                           std::to_string(k));
    }
    Vec target = averaged_target(paths, node);
    const double w = eta(schedule, s.t);
    steps.push_back({k, s.t, w, node, distance(s.x, target), 0.0});

    Vec base = config.base_condition == BaseCondition::None
                   ? Vec(s.x.size(), 0.0)
                   : marginal_velocity(s.x, s.t, mixture, base_cond, config.time_clamp);
    Vec drift = w == 0.0 ? std::move(base)
                         : blend_drift(base, lqr_control(s.x, target, s.t, config.time_clamp), w);
    targets.push_back(std::move(target));
    return drift;
  });
  for (std::size_t k = 0; k < n; ++k) steps[k].dist_after = distance(traj.states[k + 1], targets[k]);
  return Generation{std::move(traj), std::move(steps)};
}

RestoreResult restore(VecView observed, const GaussianMixture& mixture, const Condition& prompt,
                      const PdlsConfig& config, std::uint64_t seed) {
  DualPaths paths = dual_invert(observed, mixture, prompt, config, seed);
  Generation gen = steered_generate(paths, mixture, config);
  RestoreReport report;
  report.structural_latent_norm = norm(noise_end_latent(paths.structural));
  report.semantic_latent_norm = norm(noise_end_latent(paths.semantic));
  report.init_latent_norm = norm(gen.trajectory.states.front());
  report.steps = std::move(gen.steps);
  Vec output = gen.trajectory.terminal();
  return RestoreResult{std::move(output), std::move(paths), std::move(gen.trajectory),
                       std::move(report)};
}

ImageRestoreResult restore(const ImageGrid& observed, const DegradationOperator& op,
                           std::size_t width, std::size_t height, const GaussianMixture& mixture,
                           const Condition& prompt, const PdlsConfig& config, std::uint64_t seed) {
  const ImageGrid lifted = lift(op, observed, width, height);
  RestoreResult detail = restore(lifted.view(), mixture, prompt, config, seed);
  ImageGrid image(width, height, detail.output);
  return ImageRestoreResult{std::move(image), std::move(detail)};
}

}  // namespace pdls
