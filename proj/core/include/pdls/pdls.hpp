// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdls/control.hpp"
#include "pdls/degrade.hpp"
#include "pdls/flowfield.hpp"
#include "pdls/integrate.hpp"

namespace pdls {

/// Which noise-end latent starts the reverse process.
enum class InitMode { Structural, Semantic, Mixed };

/// Condition driving the base drift of the reverse process. `None` drops the
/// base drift entirely, leaving pure steering (ablation only).
enum class BaseCondition { UsePrompt, UseNull, None };

inline constexpr std::size_t kDefaultSteps = 28;
inline constexpr double kDefaultGamma = 0.5;
inline constexpr double kDefaultEtaMax = 0.5;

struct PdlsConfig {
  double gamma = kDefaultGamma;
  double eta_max = kDefaultEtaMax;
  std::size_t n_steps = kDefaultSteps;
  InitMode init_mode = InitMode::Structural;
  BaseCondition base_condition = BaseCondition::UsePrompt;
  ScheduleKind schedule = ScheduleKind::CosineDecay;
  double time_clamp = kTimeClamp;

  SteeringSchedule steering() const { return {eta_max, schedule}; }
};

void validate(const PdlsConfig& config);

std::string to_string(InitMode mode);
std::string to_string(BaseCondition base);
std::string to_string(ScheduleKind kind);
InitMode parse_init_mode(const std::string& text);
BaseCondition parse_base_condition(const std::string& text);
ScheduleKind parse_schedule(const std::string& text);

/// The standard normal draw z0 ~ N(0, I) used for a given seed.
Vec draw_noise(std::size_t dim, std::uint64_t seed);

/// Grid of the inversion: descending from 1 to 0.
TimeGrid inversion_grid(std::size_t n_steps, double time_clamp = kTimeClamp);
/// Grid of the reverse process: ascending from 0 to 1, node k sharing its
/// time with inversion node n_steps - k.
TimeGrid generation_grid(std::size_t n_steps, double time_clamp = kTimeClamp);

/// Controlled inversion from the observation (t = 1) to the noise end
/// (t = 0): the marginal field under `cond` blended with the straight-line
/// field toward `z0` with weight `gamma`.
Trajectory invert_path(VecView observed, const GaussianMixture& mixture, const Condition& cond,
                       double gamma, std::size_t n_steps, VecView z0,
                       double time_clamp = kTimeClamp);
Trajectory invert_path(VecView observed, const GaussianMixture& mixture, const Condition& cond,
                       double gamma, std::size_t n_steps, std::uint64_t noise_seed,
                       double time_clamp = kTimeClamp);

struct DualPaths {
  Trajectory structural;  // Null condition
  Trajectory semantic;    // prompt condition
  Condition condition;
  Vec z0;
};

/// Runs the structural and semantic inversions with one shared z0.
DualPaths dual_invert(VecView observed, const GaussianMixture& mixture, const Condition& prompt,
                      const PdlsConfig& config, std::uint64_t noise_seed);

/// Midpoint of the two stored states at an inversion node.
Vec averaged_target(const DualPaths& paths, std::size_t node_index);

/// Noise-end state of an inversion trajectory (its last node).
Vec noise_end_latent(const Trajectory& inversion);

Vec initial_latent(const DualPaths& paths, InitMode mode);

struct SteeringStep {
  std::size_t step = 0;
  double t = 0.0;           // evaluation time of the step
  double eta = 0.0;         // schedule weight
  std::size_t target_node = 0;  // inversion node used as target
  double dist_to_target = 0.0;  // |X_k - ybar| before the step
  double dist_after = 0.0;      // |X_{k+1} - ybar| after the step, same target
};

struct Generation {
  Trajectory trajectory;
  std::vector<SteeringStep> steps;
};

/// Reverse process: from the init latent, drift =
/// blend(base velocity, lqr_control(x, averaged target), eta(t)).
Generation steered_generate(const DualPaths& paths, const GaussianMixture& mixture,
                            const PdlsConfig& config);

struct RestoreReport {
  double structural_latent_norm = 0.0;
  double semantic_latent_norm = 0.0;
  double init_latent_norm = 0.0;
  std::vector<SteeringStep> steps;
};

struct RestoreResult {
  Vec output;
  DualPaths paths;
  Trajectory generation;
  RestoreReport report;
};

/// dual_invert followed by steered_generate on a vector already living in the
/// mixture's space.
RestoreResult restore(VecView observed, const GaussianMixture& mixture, const Condition& prompt,
                      const PdlsConfig& config, std::uint64_t seed);

/// Image variant: the measurement is lifted back to width x height with the
/// operator before restoring. The output is clamped into [0, 1].
struct ImageRestoreResult {
  ImageGrid image;
  RestoreResult detail;
};
ImageRestoreResult restore(const ImageGrid& observed, const DegradationOperator& op,
                           std::size_t width, std::size_t height, const GaussianMixture& mixture,
                           const Condition& prompt, const PdlsConfig& config, std::uint64_t seed);

}  // namespace pdls
