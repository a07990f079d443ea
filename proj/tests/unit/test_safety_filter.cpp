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

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "srcbf/filter/qp_oracle.hpp"
#include "srcbf/filter/safety_filter.hpp"
#include "srcbf/unicycle/unicycle.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using srcbf::ConstraintTerms;
using srcbf::Covector;
using srcbf::FilterParams;
using srcbf::StateVector;
namespace uni = srcbf::unicycle;

namespace {

const uni::AugmentedState kX0{0, 0, 0, 0, 2, -3};

srcbf::BarrierChain chain_for(double m, double eps1 = 0.01, double eps2 = 0.01) {
  uni::AvoidanceParams p;
  p.M = m;
  p.eps1 = eps1;
  p.eps2 = eps2;
  return uni::build_chain(p, kX0, m);
}

StateVector to_state(const std::array<double, 6>& s) { return StateVector{s[0], s[1], s[2], s[3], s[4], s[5]}; }

struct OverrideCase {
  StateVector x;
  std::array<double, 2> u0;
};

// States near the obstacle where the nominal control violates the constraint.
std::vector<OverrideCase> override_cases(const srcbf::BarrierChain& chain, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> control(-3.0, 3.0);
  const FilterParams params{1.0};
  std::vector<OverrideCase> out;
  while (out.size() < count) {
    const StateVector x = to_state(srcbf::testing::random_unicycle_state(rng, {2.1, 8.0, 2.0, 3.14159}));
    const std::array<double, 2> u0{control(rng), control(rng)};
    const ConstraintTerms terms = srcbf::constraint_terms(x, chain, params);
    if (terms.margin(u0) < 0.0 && terms.lg.squared_norm() >= 1e-2) out.push_back({x, u0});
  }
  return out;
}

}  // namespace

TEST_CASE("eta far from the obstacle leaves the nominal control alone", "[eta]") {
  const auto chain = chain_for(1.0);
  const StateVector far{0, 0, 1, 0, 100, 0};
  const std::array<double, 2> u0{0.0, 0.0};
  // h2 = 3 * 9996 - 200 - sqrt(40000.01), L_f h2 = -596 (to 1e-5), |L_p h2| ~ 596.
  const double eta = srcbf::eta(far, u0, chain, FilterParams{1.0});
  CHECK_THAT(eta, WithinAbs(29988.0 - 200.0 - 200.0 - 596.0 - 596.0, 1e-3));
  const auto d = srcbf::filter(far, u0, chain, FilterParams{1.0});
  CHECK_FALSE(d.overridden);
  CHECK(d.u == std::vector<double>{0.0, 0.0});
}

TEST_CASE("eta on the constraint boundary", "[eta]") {
  const ConstraintTerms terms{0.0, 0.0, Covector{1.0, 0.0}, 0.0, 1.0};
  const std::array<double, 2> u0{0.0, 0.0};
  CHECK(terms.margin(u0) == 0.0);
  const auto d = srcbf::filter(terms, u0);
  CHECK_FALSE(d.overridden);
  CHECK(d.u == std::vector<double>{0.0, 0.0});
}

TEST_CASE("eta is affine in the nominal control", "[eta][property]") {
  const auto chain = chain_for(1.0);
  const FilterParams params{1.0};
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> control(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const StateVector x = to_state(srcbf::testing::random_unicycle_state(rng, {2.1, 20.0, 3.0, 3.14159}));
    const std::array<double, 2> u0{control(rng), control(rng)};
    const std::array<double, 2> step{control(rng), control(rng)};
    const std::array<double, 2> u1{u0[0] + step[0], u0[1] + step[1]};
    const ConstraintTerms terms = srcbf::constraint_terms(x, chain, params);
    const double lhs = srcbf::eta(x, u1, chain, params) - srcbf::eta(x, u0, chain, params);
    CHECK(srcbf::testing::relative_error(lhs, terms.lg.pair(step)) <= 1e-9);
    CHECK(srcbf::constraint_margin(x, u0, chain, params) == srcbf::eta(x, u0, chain, params));
  }
}

TEST_CASE("filter projects onto the half-space", "[filter]") {
  const ConstraintTerms terms{0.0, -2.0, Covector{1.0, 0.0}, 0.0, 1.0};
  const std::array<double, 2> u0{0.0, -0.25};
  const auto d = srcbf::filter(terms, u0);
  CHECK(d.overridden);
  CHECK(d.eta == -2.0);
  CHECK(d.u == std::vector<double>{2.0, -0.25});
  CHECK(d.margin == 0.0);
}

TEST_CASE("filter refuses to divide by a vanishing L_g h", "[filter]") {
  const ConstraintTerms singular{1.0, -5.0, Covector{0.0, 0.0}, 0.0, 1.0};
  const std::array<double, 2> u0{0.0, 0.0};
  try {
    srcbf::filter(singular, u0);
    FAIL("expected SingularConstraint");
  } catch (const srcbf::SingularConstraint& e) {
    CHECK(e.eta() == -4.0);
    CHECK(e.lg_norm_sq() == 0.0);
  }
  const ConstraintTerms satisfied{1.0, 0.0, Covector{0.0, 0.0}, 0.0, 1.0};
  CHECK_FALSE(srcbf::filter(satisfied, u0).overridden);
  CHECK_THROWS_AS(srcbf::filter(StateVector{0, 0, 1, 0, 100, 0}, u0, chain_for(1.0), FilterParams{0.0}),
                  srcbf::ParameterError);
}

TEST_CASE("overrides satisfy the optimality conditions", "[filter][property]") {
  const auto chain = chain_for(1.0);
  const FilterParams params{1.0};
  for (const auto& c : override_cases(chain, 200, 7)) {
    const ConstraintTerms terms = srcbf::constraint_terms(c.x, chain, params);
    const auto d = srcbf::filter(terms, c.u0);
    REQUIRE(d.overridden);
    CHECK(std::abs(d.margin) <= 1e-9 * std::max(1.0, std::abs(d.eta)));
    const std::array<double, 2> du{d.u[0] - c.u0[0], d.u[1] - c.u0[1]};
    const double norm = std::hypot(du[0], du[1]);
    CHECK_THAT(norm, WithinRel(-d.eta / terms.lg.norm(), 1e-12));
    // Correction along +L_g h: cross product zero, dot product positive.
    CHECK(std::abs(du[0] * terms.lg[1] - du[1] * terms.lg[0]) <= 1e-12 * norm * terms.lg.norm());
    CHECK(du[0] * terms.lg[0] + du[1] * terms.lg[1] > 0.0);
  }
}

TEST_CASE("closed form matches the grid-search oracle", "[oracle]") {
  // With p* the projection, rho = |u0 - p*| and h the grid spacing, some
  // corner of the cell holding p* is feasible, so the oracle's distance is
  // at most rho + sqrt(2) h, and its point lies within
  // sqrt(2 sqrt(2) rho h + 2 h^2) of p* (it may slide along the boundary).
  const auto chain = chain_for(1.0);
  const FilterParams params{1.0};
  for (const auto& c : override_cases(chain, 20, 13)) {
    const ConstraintTerms terms = srcbf::constraint_terms(c.x, chain, params);
    const auto d = srcbf::filter(terms, c.u0);
    const double rho = -d.eta / terms.lg.norm();
    const double radius = 1.25 * std::max(rho, 0.05);
    const int steps = 200;
    const auto grid = srcbf::qp_oracle(terms, c.u0, radius, steps);
    const double h = srcbf::grid_resolution(radius, steps);
    const double dist = std::hypot(grid[0] - c.u0[0], grid[1] - c.u0[1]);
    CHECK(dist >= rho - 1e-12);
    CHECK(dist <= rho + h);
    CHECK(std::hypot(grid[0] - d.u[0], grid[1] - d.u[1]) <= std::sqrt(2.0 * std::sqrt(2.0) * rho * h + 2.0 * h * h));
  }
}

TEST_CASE("oracle passes a satisfied nominal control through", "[oracle]") {
  const ConstraintTerms terms{1.0, 0.0, Covector{1.0, 2.0}, 0.0, 1.0};
  const std::array<double, 2> u0{0.3, 0.4};
  const auto grid = srcbf::qp_oracle(terms, u0, 1.0, 100);
  CHECK(std::hypot(grid[0] - u0[0], grid[1] - u0[1]) <= srcbf::grid_resolution(1.0, 100));
}

TEST_CASE("oracle reports infeasible grids", "[oracle]") {
  const std::array<double, 2> u0{0.0, 0.0};
  const ConstraintTerms far{0.0, -10.0, Covector{1.0, 0.0}, 0.0, 1.0};
  try {
    srcbf::qp_oracle(far, u0, 1.0, 100);
    FAIL("expected InfeasibleGrid");
  } catch (const srcbf::InfeasibleGrid& e) {
    CHECK(e.analytic_feasible());
  }
  const ConstraintTerms impossible{0.0, -10.0, Covector{0.0, 0.0}, 0.0, 1.0};
  try {
    srcbf::qp_oracle(impossible, u0, 1.0, 100);
    FAIL("expected InfeasibleGrid");
  } catch (const srcbf::InfeasibleGrid& e) {
    CHECK_FALSE(e.analytic_feasible());
  }
  CHECK_THROWS_AS(srcbf::qp_oracle(far, u0, 1.0, 99), srcbf::ParameterError);
  CHECK_THROWS_AS(srcbf::qp_oracle(far, std::vector<double>{}, 1.0, 100), srcbf::DimensionError);
}

TEST_CASE("the disturbance term only ever tightens the constraint", "[conservatism]") {
  ConstraintTerms terms{2.0, -1.0, Covector{1.0, -1.0}, 0.0, 1.0};
  const std::array<double, 2> u0{0.2, 0.1};
  const double delta = 3.0;
  double previous = terms.margin(u0);
  for (double m : {0.5, 1.0, 1.5, 2.0}) {
    terms.robust_term = m * delta;
    CHECK(terms.margin(u0) < previous);
    previous = terms.margin(u0);
  }
}

TEST_CASE("eta is non-increasing in M and eps on the operating region", "[conservatism][property]") {
  // Region: distance >= 2 and |v| <= 1.5, where c2 delta_1 + L_f delta_1 >= 0.
  const FilterParams params{1.0};
  const auto m05 = chain_for(0.5);
  const auto m10 = chain_for(1.0);
  const auto m15 = chain_for(1.5);
  const auto eps_big = chain_for(1.0, 0.1, 0.1);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> control(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const StateVector x = to_state(srcbf::testing::random_unicycle_state(rng, {2.0, 10.0, 1.5, 3.14159}));
    const std::array<double, 2> u0{control(rng), control(rng)};
    const double e05 = srcbf::eta(x, u0, m05, params);
    const double e10 = srcbf::eta(x, u0, m10, params);
    const double e15 = srcbf::eta(x, u0, m15, params);
    CHECK(e10 <= e05);
    CHECK(e15 <= e10);
    CHECK(srcbf::eta(x, u0, eps_big, params) <= e10);
  }
}
