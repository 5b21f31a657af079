// Copyright 2026 The PDLS Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "oracles.hpp"
#include "pdls/integrate.hpp"

namespace pdls {
namespace {

TEST(TimeGrid, NodesAndEvaluationTimes) {
  const TimeGrid g = make_grid(2, 0.0, 1.0);
  EXPECT_EQ(g.nodes(), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_DOUBLE_EQ(g.eval_time(0), 0.001);
  EXPECT_DOUBLE_EQ(g.eval_time(1), 0.5);
  EXPECT_DOUBLE_EQ(g.eval_time(2), 0.999);
}

TEST(TimeGrid, PaperStepCount) { EXPECT_EQ(make_grid(28, 0.0, 1.0).size(), 29u); }

TEST(TimeGrid, Descending) {
  const TimeGrid g = make_grid(1, 1.0, 0.0);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_FALSE(g.ascending());
  EXPECT_EQ(g.step(0), -1.0);
}

TEST(TimeGrid, UniformSpacingAndExactReversal) {
  for (std::size_t n : {3u, 7u, 28u, 100u}) {
    const TimeGrid up = make_grid(n, 0.0, 1.0), down = make_grid(n, 1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      EXPECT_NEAR(up.step(k), 1.0 / n, 1e-15);
      EXPECT_GT(up.node(k + 1), up.node(k));
      EXPECT_EQ(down.node(n - k), up.node(k));
    }
    EXPECT_EQ(up.reversed().nodes(), down.nodes());
  }
}

TEST(TimeGrid, Errors) {
  EXPECT_THROW(make_grid(0, 0.0, 1.0), InvalidArgument);
  try {
    make_grid(4, 0.3, 0.3);
    FAIL() << "expected a throw";
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("zero length"), std::string::npos);
  }
  EXPECT_THROW(make_grid(4, -0.1, 1.0), InvalidArgument);
  EXPECT_THROW(make_grid(4, 0.0, 1.5), InvalidArgument);
}

TEST(Integrate, ZeroDriftIsConstant) {
  const Vec x0{1.5, -2.0};
  const auto traj = integrate(x0, make_grid(10, 0.0, 1.0),
                              [](const LatentState& s, std::size_t) { return Vec(s.x.size(), 0.0); });
  for (const auto& s : traj.states) EXPECT_EQ(s, x0);
}

// The last step is evaluated at its own node, where the field covers exactly
// the remaining distance. A single step would sit on the clamped time 0.
TEST(Integrate, StraightLineFieldArrivesExactly) {
  const Vec z{3.0, -1.0, 0.25};
  for (std::size_t n : {2u, 7u, 28u, 100u}) {
    const auto traj = integrate(Vec{0.1, 0.2, 0.3}, make_grid(n, 0.0, 1.0),
                                [&](const LatentState& s, std::size_t) {
                                  return endpoint_conditional_velocity(s, z, EndpointTime::Data);
                                });
    EXPECT_LT(distance(traj.terminal(), z) / norm(z), 1e-9) << "n=" << n;
  }
}

double standard_normal_error(std::size_t n) {
  const GaussianMixture target({{1.0, {0.0, 0.0}, 1.0, "n"}});
  const Vec x0{1.0, 0.0};
  const auto traj = integrate(x0, make_grid(n, 0.0, 1.0), [&](const LatentState& s, std::size_t) {
    return marginal_velocity(s.x, s.t, target, Condition::null());
  });
  // The N(0, I) -> N(0, I) flow is x(t) = sqrt((1-t)^2 + t^2) x0.
  return distance(traj.terminal(), testing::gaussian_flow(x0, Vec{0.0, 0.0}, 1.0, 1.0));
}

TEST(Integrate, FirstOrderOnStandardNormalTarget) {
  const double ratio = standard_normal_error(100) / standard_normal_error(200);
  EXPECT_GE(ratio, 1.6);
  EXPECT_LE(ratio, 2.4);
}

TEST(Integrate, FirstOrderOnShiftedGaussian) {
  const Vec m{1.0, -2.0};
  const GaussianMixture target({{1.0, m, 0.2, "g"}});
  const Vec z{0.5, 0.5};
  auto error = [&](std::size_t n) {
    const auto traj = integrate(z, make_grid(n, 0.0, 1.0), [&](const LatentState& s, std::size_t) {
      return marginal_velocity(s.x, s.t, target, Condition::null());
    });
    return distance(traj.terminal(), testing::gaussian_flow(z, m, 0.2, 1.0));
  };
  for (std::size_t n : {50u, 100u, 200u}) {
    const double ratio = error(n) / error(2 * n);
    EXPECT_GE(ratio, 1.6) << n;
    EXPECT_LE(ratio, 2.4) << n;
  }
}

TEST(Integrate, TimeReversalRoundTripIsFirstOrder) {
  const GaussianMixture target({{1.0, {1.0, -2.0}, 0.2, "g"}});
  const Vec x0{0.5, 0.5};
  auto round_trip = [&](std::size_t n) {
    const TimeGrid up = make_grid(n, 0.0, 1.0);
    auto drift = [&](const LatentState& s, std::size_t) {
      return marginal_velocity(s.x, s.t, target, Condition::null());
    };
    const auto fwd = integrate(x0, up, drift);
    const auto back = integrate(fwd.terminal(), up.reversed(), drift);
    return distance(back.terminal(), x0);
  };
  const double ratio = round_trip(100) / round_trip(200);
  EXPECT_GE(ratio, 1.6);
  EXPECT_LE(ratio, 2.4);
}

TEST(Integrate, DivergenceIsReported) {
  try {
    integrate(Vec{1.0}, make_grid(5, 0.0, 1.0), [](const LatentState&, std::size_t k) {
      return Vec{k == 3 ? std::numeric_limits<double>::infinity() : 0.0};
    });
    FAIL() << "expected a throw";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("drift diverged at step 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(integrate(Vec{1.0}, make_grid(2, 0.0, 1.0),
                         [](const LatentState&, std::size_t) { return Vec{0.0, 0.0}; }),
               InvalidArgument);
}

TEST(Integrate, PassesStepIndexAndClampedTime) {
  std::vector<std::pair<std::size_t, double>> seen;
  integrate(Vec{0.0}, make_grid(4, 1.0, 0.0), [&](const LatentState& s, std::size_t k) {
    seen.emplace_back(k, s.t);
    return Vec{0.0};
  });
  ASSERT_EQ(seen.size(), 4u);
  EXPECT_EQ(seen[0].first, 0u);
  EXPECT_DOUBLE_EQ(seen[0].second, 0.999);
  EXPECT_DOUBLE_EQ(seen[3].second, 0.25);
}

TEST(Integrate, Deterministic) {
  const GaussianMixture mix({{0.3, {1.0, 0.0}, 0.01, "a"}, {0.7, {-1.0, 0.5}, 0.1, "b"}});
  auto run = [&] {
    return integrate(Vec{0.2, -0.3}, make_grid(50, 0.0, 1.0), [&](const LatentState& s, std::size_t) {
      return marginal_velocity(s.x, s.t, mix, Condition::null());
    });
  };
  EXPECT_EQ(run().states, run().states);
}

TEST(Integrate, CsvLayout) {
  const auto traj = integrate(Vec{1.0, 2.0}, make_grid(2, 0.0, 1.0),
                              [](const LatentState&, std::size_t) { return Vec{1.0, 0.0}; });
  std::ostringstream os;
  write_csv(os, traj);
  EXPECT_EQ(os.str(), "t,x_0,x_1\n0,1,2\n0.5,1.5,2\n1,2,2\n");
}

}  // namespace
}  // namespace pdls
