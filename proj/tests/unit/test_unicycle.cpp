// Copyright 2026 The srcbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "srcbf/cbf/chain.hpp"
#include "srcbf/unicycle/unicycle.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using srcbf::Covector;
using srcbf::StateVector;
using namespace srcbf::unicycle;

namespace {

const AugmentedState kX0{0, 0, 0, 0, 2, -3};

AugmentedState from_array(const std::array<double, 6>& s) { return {s[0], s[1], s[2], s[3], s[4], s[5]}; }

}  // namespace

TEST_CASE("augmented state round trip", "[state]") {
  const AugmentedState s{1, 2, 3, 4, 5, 6};
  CHECK(AugmentedState::from_vector(s.to_vector()) == s);
  CHECK_THROWS_AS(AugmentedState::from_vector(StateVector{1, 2, 3}), srcbf::DimensionError);
  CHECK_THROWS_AS(AugmentedState::from_vector(StateVector{1, 2, 3, 4, 5, std::nan("")}), srcbf::DomainError);
  CHECK(kX0.distance() == std::hypot(2.0, 3.0));
}

TEST_CASE("agent system structure", "[system]") {
  const auto sys = agent_system();
  CHECK(sys.state_dim() == kStateDim);
  CHECK(sys.control_dim() == kControlDim);
  CHECK(sys.disturbance_dim() == kDisturbanceDim);

  const StateVector x{0, 0, 2, std::numbers::pi / 2, 5, 5};
  const StateVector at_rest = sys.evaluate(kX0.to_vector(), std::vector<double>{0, 0}, std::vector<double>{0, 0});
  CHECK(at_rest == StateVector{0, 0, 0, 0, 0, 0});

  const StateVector xdot = sys.evaluate(x, std::vector<double>{0.5, -1.0}, std::vector<double>{0.25, 0.75});
  CHECK_THAT(xdot[0], WithinAbs(0.0, 1e-15));
  CHECK(xdot[1] == 2.0);
  CHECK(xdot[2] == 0.5);
  CHECK(xdot[3] == -1.0);
  CHECK(xdot[4] == 0.25);
  CHECK(xdot[5] == 0.75);
}

TEST_CASE("distance barrier", "[barrier]") {
  CHECK(h1(kX0, 2.0) == 9.0);
  CHECK(h1(AugmentedState{0, 0, 0, 0, 0, 0}, 2.0) == -4.0);
  CHECK(h1(AugmentedState{0, 0, 0, 0, 2, 0}, 2.0) == 0.0);
}

TEST_CASE("hand-derived second level", "[barrier]") {
  const AvoidanceParams p;
  CHECK_THAT(h2_analytic(kX0, p), WithinAbs(19.7882041071588832715, 1e-12));

  AvoidanceParams plain = p;
  plain.M = 0.0;
  const AugmentedState moving{0, 0, 1, 0, 2, -3};
  // c1 h1 + L_f h1 = 27 + 2 * (-2) * 1.
  CHECK(h2_analytic(moving, plain) == 23.0);

  const auto chain = build_chain(p, kX0, p.M);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    const AugmentedState s = from_array(srcbf::testing::random_unicycle_state(rng));
    CHECK(srcbf::testing::relative_error(chain.value(2, s.to_vector()), h2_analytic(s, p)) <= 1e-12);
  }
}

TEST_CASE("hand-derived Lie derivatives at the reference state", "[lie]") {
  const AppendixLie lie = appendix_lie_h2(kX0, AvoidanceParams{});
  CHECK(lie.lf == 0.0);
  CHECK(lie.lg == Covector{-4, 0});
  CHECK_THAT(lie.lp[0], WithinAbs(10.8907062652811202879, 1e-12));
  CHECK_THAT(lie.lp[1], WithinAbs(-16.3360593979216804318, 1e-12));

  const AugmentedState parked{1, 1, 0, 0.3, 4, -2};
  CHECK(appendix_lie_h2(parked, AvoidanceParams{}).lf == 0.0);
}

TEST_CASE("hand-derived and automatic Lie derivatives agree", "[lie][property]") {
  const AvoidanceParams p;
  const auto chain = build_chain(p, kX0, p.M);
  const auto sys = agent_system();
  std::mt19937_64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    const AugmentedState s = from_array(srcbf::testing::random_unicycle_state(rng));
    const AppendixLie hand = appendix_lie_h2(s, p);
    const auto ad = srcbf::lie_derivatives(chain.top().h, s.to_vector(), sys);
    CHECK(srcbf::testing::relative_error(ad.lf, hand.lf) <= 1e-9);
    CHECK(srcbf::testing::relative_error(ad.lg.entries(), hand.lg.entries()) <= 1e-9);
    CHECK(srcbf::testing::relative_error(ad.lp.entries(), hand.lp.entries()) <= 1e-9);
  }
}

TEST_CASE("mixed relative degree", "[lie]") {
  const auto sys = agent_system();
  const auto chain = build_chain(AvoidanceParams{}, kX0, 1.0);
  std::mt19937_64 rng(8);
  int nonzero = 0;
  for (int i = 0; i < 100; ++i) {
    const StateVector x = from_array(srcbf::testing::random_unicycle_state(rng)).to_vector();
    CHECK(srcbf::lie_derivatives(chain.level(1).h, x, sys).lg.squared_norm() == 0.0);
    if (srcbf::lie_derivatives(chain.level(2).h, x, sys).lg.squared_norm() > 0.0) ++nonzero;
  }
  CHECK(nonzero == 100);
}

TEST_CASE("obstacle truth model", "[obstacle]") {
  const auto profile = paper_obstacle_profile();
  const ObstacleRate r0 = obstacle_dynamics(0.0, ObstacleState{2, -3, std::numbers::pi / 2}, profile);
  CHECK_THAT(r0.dx, WithinAbs(0.0, 1e-15));
  CHECK_THAT(r0.dy, WithinAbs(1.0, 1e-15));
  CHECK(r0.dtheta == 2.0);

  for (double t = 0.0; t <= 10.0; t += 0.37) {
    const ObstacleRate r = obstacle_dynamics(t, ObstacleState{0, 0, 0.1 * t}, profile);
    CHECK_THAT(std::hypot(r.dx, r.dy), WithinAbs(1.0, 1e-12));
    CHECK_THAT(r.dtheta, WithinAbs(2.0 * std::cos(2.0 * t), 1e-15));
  }

  const ObstacleRate parked = obstacle_dynamics(1.0, ObstacleState{0, 0, 1}, UnicycleObstacle{});
  CHECK(parked.dx == 0.0);
  CHECK(parked.dy == 0.0);
}

TEST_CASE("the paper obstacle respects the disturbance bound", "[obstacle]") {
  const AvoidanceParams p;
  const auto profile = paper_obstacle_profile();
  for (double t = 0.0; t <= 10.0; t += 0.01) {
    const ObstacleRate r = obstacle_dynamics(t, ObstacleState{0, 0, t}, profile);
    CHECK(std::hypot(r.dx, r.dy) <= p.M + 1e-12);
  }
}

TEST_CASE("avoidance parameter validation", "[params]") {
  CHECK_NOTHROW(AvoidanceParams{}.validate());
  CHECK_THROWS_AS((AvoidanceParams{0.0, 1, 3, 1, 0.01, 0.01}.validate()), srcbf::ParameterError);
  CHECK_THROWS_AS((AvoidanceParams{2, -1, 3, 1, 0.01, 0.01}.validate()), srcbf::ParameterError);
  CHECK_THROWS_AS((AvoidanceParams{2, 1, 3, 0, 0.01, 0.01}.validate()), srcbf::ParameterError);
  CHECK_THROWS_AS((AvoidanceParams{2, 1, 3, 1, 0.0, 0.01}.validate()), srcbf::ParameterError);
  CHECK_NOTHROW(AvoidanceParams{2, 0, 3, 1, 0.01, 0.01}.validate());
}

TEST_CASE("signals", "[signal]") {
  CHECK(evaluate(ConstantSignal{1.5}, 7.0) == 1.5);
  CHECK(evaluate(SinusoidSignal{2, 2, 0, 0}, 0.0) == 2.0);
  CHECK_THAT(evaluate(SinusoidSignal{1, 1, std::numbers::pi / 2, 0.5}, 0.0), WithinAbs(0.5, 1e-15));

  const PiecewiseSignal steps{{1.0, 2.0}, {10.0, 20.0}};
  CHECK(evaluate(steps, 0.0) == 10.0);
  CHECK(evaluate(steps, 1.0) == 10.0);
  CHECK(evaluate(steps, 1.999) == 10.0);
  CHECK(evaluate(steps, 2.0) == 20.0);
  CHECK(evaluate(steps, 50.0) == 20.0);

  const TabulatedSignal table{{0.0, 1.0, 3.0}, {0.0, 2.0, -2.0}};
  CHECK(evaluate(table, -1.0) == 0.0);
  CHECK(evaluate(table, 0.5) == 1.0);
  CHECK(evaluate(table, 2.0) == 0.0);
  CHECK(evaluate(table, 9.0) == -2.0);

  CHECK_THROWS_AS(validate(PiecewiseSignal{{}, {}}), srcbf::ParameterError);
  CHECK_THROWS_AS(validate(TabulatedSignal{{0.0, 0.0}, {1.0, 2.0}}), srcbf::ParameterError);
  CHECK_THROWS_AS(validate(TabulatedSignal{{0.0, 1.0}, {1.0}}), srcbf::ParameterError);
}
