// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include "pdls/flowfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace pdls {

namespace {

void check_time(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("time out of range");
}

double marginal_variance(double t, double variance) {
  const double u = 1.0 - t;
  return u * u + t * t * variance;
}

}  // namespace

GaussianMixture::GaussianMixture(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidArgument("mixture has no components");
  dim_ = components_.front().mean.size();
  if (dim_ == 0) throw InvalidArgument("mixture dimension must be at least 1");
  double total = 0.0;
  for (const auto& c : components_) {
    if (c.mean.size() != dim_) throw InvalidArgument("mixture means have different dimensions");
    if (!(c.weight > 0.0)) throw InvalidArgument("mixture weights must be strictly positive");
    if (!(c.variance >= 0.0) || !std::isfinite(c.variance)) {
      throw InvalidArgument("mixture variance must be finite and non-negative");
    }
    if (!all_finite(c.mean)) throw InvalidArgument("mixture mean is not finite");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw InvalidArgument("mixture weights must sum to 1");
}

GaussianMixture GaussianMixture::from_exemplars(const std::vector<Vec>& exemplars,
                                                const std::vector<std::string>& labels,
                                                double variance) {
  if (exemplars.size() != labels.size()) {
    throw InvalidArgument("exemplar and label counts differ");
  }
  if (exemplars.empty()) throw InvalidArgument("no exemplars");
  std::vector<MixtureComponent> comps;
  comps.reserve(exemplars.size());
  const double w = 1.0 / static_cast<double>(exemplars.size());
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    comps.push_back({w, exemplars[i], variance, labels[i]});
  }
  // Renormalise so the weights add to one exactly in floating point.
  double total = 0.0;
  for (const auto& c : comps) total += c.weight;
  comps.back().weight += 1.0 - total;
  return GaussianMixture(std::move(comps));
}

std::vector<std::string> GaussianMixture::labels() const {
  std::vector<std::string> out;
  for (const auto& c : components_) {
    if (std::find(out.begin(), out.end(), c.label) == out.end()) out.push_back(c.label);
  }
  return out;
}

bool GaussianMixture::has_label(const std::string& label) const {
  return std::any_of(components_.begin(), components_.end(),
                     [&](const MixtureComponent& c) { return c.label == label; });
}

Condition Condition::labels(std::set<std::string> labels) {
  if (labels.empty()) throw InvalidArgument("condition selects no components");
  return Condition(Labels{std::move(labels)});
}

const std::set<std::string>& Condition::label_set() const {
  static const std::set<std::string> kEmpty;
  if (const auto* l = std::get_if<Labels>(&value_)) return l->labels;
  return kEmpty;
}

std::vector<std::size_t> Condition::select(const GaussianMixture& mixture) const {
  std::vector<std::size_t> out;
  if (is_null()) {
    out.resize(mixture.size());
    std::iota(out.begin(), out.end(), std::size_t{0});
    return out;
  }
  const auto& wanted = label_set();
  for (const auto& label : wanted) {
    if (!mixture.has_label(label)) throw InvalidArgument("unknown label '" + label + "'");
  }
  for (std::size_t k = 0; k < mixture.size(); ++k) {
    if (wanted.count(mixture[k].label) != 0) out.push_back(k);
  }
  if (out.empty()) throw InvalidArgument("condition selects no components");
  return out;
}

std::string Condition::to_string() const {
  if (is_null()) return "null";
  std::string out;
  for (const auto& l : label_set()) {
    if (!out.empty()) out += '+';
    out += l;
  }
  return out;
}

Responsibilities responsibilities(VecView x, double t, const GaussianMixture& mixture,
                                  const Condition& cond) {
  check_time(t);
  if (x.size() != mixture.dim()) throw InvalidArgument("responsibilities: dimension mismatch");
  Responsibilities r;
  r.component = cond.select(mixture);
  const std::size_t n = r.component.size();
  r.prob.assign(n, 0.0);
  if (n == 1) {
    r.prob[0] = 1.0;
    return r;
  }

  // At t = 1 a Dirac component has zero marginal variance: it either sits
  // exactly on x (and then dominates every smooth component) or has no mass.
  bool any_degenerate = false;
  double exact_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = mixture[r.component[i]];
    if (marginal_variance(t, c.variance) == 0.0) {
      any_degenerate = true;
      double d2 = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double d = x[j] - t * c.mean[j];
        d2 += d * d;
      }
      if (d2 == 0.0) {
        r.prob[i] = c.weight;
        exact_weight += c.weight;
      }
    }
  }
  if (exact_weight > 0.0) {
    for (double& p : r.prob) p /= exact_weight;
    return r;
  }

  const double half_dim = 0.5 * static_cast<double>(x.size());
  std::vector<double> logp(n, -std::numeric_limits<double>::infinity());
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = mixture[r.component[i]];
    const double s = marginal_variance(t, c.variance);
    if (s == 0.0) continue;
    double d2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double d = x[j] - t * c.mean[j];
      d2 += d * d;
    }
    logp[i] = std::log(c.weight) - half_dim * std::log(s) - 0.5 * d2 / s;
    max_log = std::max(max_log, logp[i]);
  }
  if (!std::isfinite(max_log)) {
    if (any_degenerate) throw NumericalError("degenerate posterior at terminal time");
    throw NumericalError("responsibilities: no component has finite density");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r.prob[i] = std::exp(logp[i] - max_log);
    total += r.prob[i];
  }
  for (double& p : r.prob) p /= total;
  return r;
}

Vec posterior_endpoint_mean(VecView x, double t, const GaussianMixture& mixture,
                            const Condition& cond) {
  const Responsibilities r = responsibilities(x, t, mixture, cond);
  Vec out(x.size(), 0.0);
  for (std::size_t i = 0; i < r.component.size(); ++i) {
    const double p = r.prob[i];
    if (p == 0.0) continue;
    const auto& c = mixture[r.component[i]];
    const double s = marginal_variance(t, c.variance);
    const double gain = s > 0.0 ? t * c.variance / s : 0.0;
    for (std::size_t j = 0; j < out.size(); ++j) {
      out[j] += p * (c.mean[j] + gain * (x[j] - t * c.mean[j]));
    }
  }
  return out;
}

Vec marginal_velocity(VecView x, double t, const GaussianMixture& mixture, const Condition& cond,
                      double time_clamp) {
  check_time(t);
  const double remaining = 1.0 - t;
  if (remaining < time_clamp - kTimeSlack) throw NumericalError("terminal-time singularity");
  Vec v = posterior_endpoint_mean(x, t, mixture, cond);
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = (v[j] - x[j]) / remaining;
  return v;
}

Vec endpoint_conditional_velocity(const LatentState& state, VecView target,
                                  EndpointTime target_time, double time_clamp) {
  check_time(state.t);
  require_same_dim(state.x, target, "endpoint_conditional_velocity");
  Vec v(target.size());
  if (target_time == EndpointTime::Data) {
    const double denom = 1.0 - state.t;
    if (denom < time_clamp - kTimeSlack) throw NumericalError("conditional field singular");
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = (target[j] - state.x[j]) / denom;
  } else {
    const double denom = state.t;
    if (denom < time_clamp - kTimeSlack) throw NumericalError("conditional field singular");
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = (state.x[j] - target[j]) / denom;
  }
  return v;
}

}  // namespace pdls
