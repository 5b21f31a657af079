// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdls/control.hpp"

namespace pdls {
namespace {

TEST(Eta, CosineExamples) {
  const SteeringSchedule s{0.5, ScheduleKind::CosineDecay};
  EXPECT_NEAR(eta(s, 0.0), 0.5, 1e-12);
  EXPECT_NEAR(eta(s, 0.5), 0.25, 1e-12);
  for (double m : {0.0, 0.1, 0.5, 1.0}) {
    EXPECT_NEAR(eta({m, ScheduleKind::CosineDecay}, 1.0), 0.0, 1e-12) << m;
  }
}

TEST(Eta, ConstantSchedule) {
  for (double t : {0.0, 0.3, 1.0}) EXPECT_EQ(eta({0.7, ScheduleKind::Constant}, t), 0.7);
}

TEST(Eta, RangeErrors) {
  try {
    eta({0.5, ScheduleKind::CosineDecay}, 1.5);
    FAIL() << "expected a throw";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("time out of range"), std::string::npos);
  }
  EXPECT_THROW(eta({0.5, ScheduleKind::CosineDecay}, -0.01), InvalidArgument);
  EXPECT_THROW(eta({1.5, ScheduleKind::CosineDecay}, 0.5), InvalidArgument);
  EXPECT_THROW(validate(ControlParams{1.2, {}, 1.0}), InvalidArgument);
}

TEST(Eta, StrictlyDecreasingAndSymmetric) {
  for (double m : {0.1, 0.5, 1.0}) {
    const SteeringSchedule s{m, ScheduleKind::CosineDecay};
    double prev = eta(s, 0.0);
    for (int i = 1; i < 1000; ++i) {
      const double t = i / 1000.0;
      const double e = eta(s, t);
      EXPECT_LT(e, prev) << "t=" << t;
      EXPECT_GE(e, 0.0);
      EXPECT_LE(e, m);
      EXPECT_NEAR(e + eta(s, 1.0 - t), m, 1e-12);
      prev = e;
    }
  }
}

TEST(Lqr, Examples) {
  EXPECT_EQ(lqr_control(Vec{0, 0}, Vec{1, 0}, 0.5), (Vec{2, 0}));
  EXPECT_EQ(lqr_control(Vec{0.3, -2}, Vec{0.3, -2}, 0.9), (Vec{0, 0}));
  EXPECT_EQ(lqr_control(Vec{1, 2}, Vec{0, 0}, 0.75), (Vec{-4, -8}));
}

TEST(Lqr, TerminalSingularity) {
  try {
    lqr_control(Vec{0}, Vec{1}, 0.9999);
    FAIL() << "expected a throw";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("terminal-time singularity"), std::string::npos);
  }
  EXPECT_THROW(lqr_control(Vec{0}, Vec{1, 2}, 0.5), InvalidArgument);
}

TEST(Lqr, ContractionIdentity) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    Vec x(3), y(3);
    for (int j = 0; j < 3; ++j) x[j] = gauss(rng), y[j] = gauss(rng);
    const double t = 0.99 * unit(rng), dt = (1 - t) * unit(rng);
    const Vec c = lqr_control(x, y, t);
    Vec next(3);
    for (int j = 0; j < 3; ++j) next[j] = x[j] + dt * c[j];
    const double factor = 1 - dt / (1 - t);
    EXPECT_GE(factor, 0.0);
    EXPECT_LE(factor, 1.0);
    EXPECT_NEAR(distance(next, y), factor * distance(x, y), 1e-12);
  }
}

TEST(Lqr, DescentDirection) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    Vec x(2), y(2);
    for (int j = 0; j < 2; ++j) x[j] = gauss(rng), y[j] = gauss(rng);
    const Vec c = lqr_control(x, y, 0.5 * (1 + gauss(rng) * 0.1));
    EXPECT_GT(c[0] * (y[0] - x[0]) + c[1] * (y[1] - x[1]), 0.0);
  }
  const Vec c = lqr_control(Vec{1, 1}, Vec{1, 1}, 0.2);
  EXPECT_EQ(c[0] * 0 + c[1] * 0, 0.0);
  EXPECT_EQ(norm(c), 0.0);
}

TEST(Blend, Examples) {
  const Vec base{1, 0}, guided{3, 0};
  EXPECT_EQ(blend_drift(base, guided, 0.0), base);
  EXPECT_EQ(blend_drift(base, guided, 1.0), guided);
  EXPECT_EQ(blend_drift(base, guided, 0.5), (Vec{2, 0}));
  EXPECT_THROW(blend_drift(base, Vec{1}, 0.5), InvalidArgument);
  EXPECT_THROW(blend_drift(base, guided, 1.5), InvalidArgument);
}

TEST(Blend, AffineInWeight) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec base{unit(rng), -unit(rng)}, guided{3 * unit(rng), unit(rng)};
    const double w1 = unit(rng), w2 = unit(rng), w3 = unit(rng);
    const Vec p1 = blend_drift(base, guided, w1), p2 = blend_drift(base, guided, w2),
              p3 = blend_drift(base, guided, w3);
    // Three points on one line: the 2-D cross product of the differences is zero.
    const double cross = (p2[0] - p1[0]) * (p3[1] - p1[1]) - (p2[1] - p1[1]) * (p3[0] - p1[0]);
    EXPECT_NEAR(cross, 0.0, 1e-12);
    if (w2 != w1) {
      EXPECT_NEAR((p2[0] - p1[0]) / (w2 - w1), guided[0] - base[0], 1e-9);
    }
  }
}

}  // namespace
}  // namespace pdls
