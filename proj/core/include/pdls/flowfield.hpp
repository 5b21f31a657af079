// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>
#include <string>
#include <variant>
#include <vector>

#include "pdls/vec.hpp"

namespace pdls {

/// Distance kept from the singular ends of the time interval.
inline constexpr double kTimeClamp = 1e-3;

/// Slack for comparisons against clamped times, so that a node placed exactly
/// at 1 - kTimeClamp is still accepted after rounding.
inline constexpr double kTimeSlack = 1e-12;

/// Bandwidth used when exemplar images are turned into mixture components.
inline constexpr double kExemplarVariance = 0.01;

struct MixtureComponent {
  double weight = 0.0;
  Vec mean;
  double variance = 0.0;  // isotropic; 0 is a Dirac (exemplar) component
  std::string label;
};

/// Target distribution at t = 1. Immutable after construction.
///
/// Weights must be strictly positive and sum to one within 1e-12, every mean
/// has the same dimension and variances are non-negative.
class GaussianMixture {
 public:
  explicit GaussianMixture(std::vector<MixtureComponent> components);

  /// Equal weights over exemplars, all sharing `variance`.
  static GaussianMixture from_exemplars(const std::vector<Vec>& exemplars,
                                        const std::vector<std::string>& labels,
                                        double variance = kExemplarVariance);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return components_.size(); }
  const MixtureComponent& operator[](std::size_t k) const { return components_[k]; }
  const std::vector<MixtureComponent>& components() const { return components_; }

  /// Distinct labels in first-appearance order.
  std::vector<std::string> labels() const;
  bool has_label(const std::string& label) const;

 private:
  std::vector<MixtureComponent> components_;
  std::size_t dim_ = 0;
};

/// Semantic condition: all components, or those carrying one of the labels.
class Condition {
 public:
  struct Null {};
  struct Labels {
    std::set<std::string> labels;
  };

  Condition() = default;
  static Condition null() { return Condition{}; }
  static Condition labels(std::set<std::string> labels);

  bool is_null() const { return std::holds_alternative<Null>(value_); }
  const std::set<std::string>& label_set() const;

  /// Component indices selected by this condition. Throws when a label is not
  /// present in the mixture or the selection is empty.
  std::vector<std::size_t> select(const GaussianMixture& mixture) const;

  /// "null" or the labels joined by '+'.
  std::string to_string() const;

 private:
  explicit Condition(Labels l) : value_(std::move(l)) {}
  std::variant<Null, Labels> value_;
};

struct LatentState {
  VecView x;
  double t = 0.0;
};

/// Posterior over the selected components; `component[i]` carries `prob[i]`.
struct Responsibilities {
  std::vector<std::size_t> component;
  std::vector<double> prob;
};

/// Bayes posterior over components under the linear-interpolation marginal
/// X_t | k ~ N(t mu_k, ((1-t)^2 + t^2 sigma_k^2) I), evaluated in log-space.
Responsibilities responsibilities(VecView x, double t, const GaussianMixture& mixture,
                                  const Condition& cond);

/// E[X_1 | X_t = x] under the conditioned mixture.
Vec posterior_endpoint_mean(VecView x, double t, const GaussianMixture& mixture,
                            const Condition& cond);

/// Exact marginal velocity of the straight-line flow from N(0, I) to the
/// conditioned mixture: (E[X_1 | x] - x) / (1 - t).
Vec marginal_velocity(VecView x, double t, const GaussianMixture& mixture, const Condition& cond,
                      double time_clamp = kTimeClamp);

enum class EndpointTime { Noise = 0, Data = 1 };

/// Forward-time velocity of the straight line through (x, t) and
/// (target, target_time).
Vec endpoint_conditional_velocity(const LatentState& state, VecView target,
                                  EndpointTime target_time, double time_clamp = kTimeClamp);

}  // namespace pdls
