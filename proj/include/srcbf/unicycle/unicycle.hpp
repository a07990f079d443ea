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

#pragma once

// Unicycle agent (with speed as an extra state) and an obstacle whose motion
// is an unknown bounded disturbance:
//
//   x' = v cos(theta)   y' = v sin(theta)   v' = u_v   theta' = u_theta
//   x_d' = d_x          y_d' = d_y          |d| <= M
//
// State order: (x, y, v, theta, x_d, y_d).

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "srcbf/cbf/chain.hpp"
#include "srcbf/cbf/system.hpp"
#include "srcbf/errors.hpp"
#include "srcbf/filter/safety_filter.hpp"
#include "srcbf/numerics/field.hpp"
#include "srcbf/numerics/linalg.hpp"
#include "srcbf/unicycle/signal.hpp"

namespace srcbf::unicycle {

inline constexpr std::size_t kStateDim = 6;
inline constexpr std::size_t kControlDim = 2;
inline constexpr std::size_t kDisturbanceDim = 2;

enum StateIndex : std::size_t { kX = 0, kY, kV, kTheta, kObstacleX, kObstacleY };

struct AugmentedState {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double theta = 0.0;  // unwrapped
  double x_d = 0.0;
  double y_d = 0.0;

  StateVector to_vector() const { return StateVector{x, y, v, theta, x_d, y_d}; }

  static AugmentedState from_vector(std::span<const double> s) {
    if (s.size() < kStateDim) {
      throw DimensionError("augmented state needs " + std::to_string(kStateDim) + " entries, got " +
                           std::to_string(s.size()));
    }
    for (std::size_t i = 0; i < kStateDim; ++i) {
      if (!std::isfinite(s[i])) throw DomainError("augmented state entry " + std::to_string(i) + " is not finite");
    }
    return {s[kX], s[kY], s[kV], s[kTheta], s[kObstacleX], s[kObstacleY]};
  }
  static AugmentedState from_vector(const StateVector& s) { return from_vector(s.span()); }

  double distance() const { return std::hypot(x - x_d, y - y_d); }

  bool operator==(const AugmentedState&) const = default;
};

struct AvoidanceParams {
  double r = 2.0;
  double M = 1.0;
  double c1 = 3.0;
  double c2 = 1.0;
  double eps1 = 0.01;
  double eps2 = 0.01;

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw ParameterError(std::string("avoidance.") + name + " must be finite and > 0");
      }
    };
    positive(r, "r");
    positive(c1, "c1");
    positive(c2, "c2");
    positive(eps1, "eps1");
    positive(eps2, "eps2");
    if (!(M >= 0.0) || !std::isfinite(M)) throw ParameterError("avoidance.M must be finite and >= 0");
  }
};

inline ControlAffineSystem agent_system() {
  VectorField drift(kStateDim, [](auto x) {
    using std::cos;
    using std::sin;
    using T = std::remove_cvref_t<decltype(x[0])>;
    std::vector<T> f(kStateDim, T(0.0));
    f[kX] = x[kV] * cos(x[kTheta]);
    f[kY] = x[kV] * sin(x[kTheta]);
    return f;
  });
  MatrixField input_map(kStateDim, [](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    Matrix<T> g(kStateDim, kControlDim);
    g(kV, 0) = T(1.0);
    g(kTheta, 1) = T(1.0);
    return g;
  });
  MatrixField disturbance_map(kStateDim, [](auto x) {
    using T = std::remove_cvref_t<decltype(x[0])>;
    Matrix<T> p(kStateDim, kDisturbanceDim);
    p(kObstacleX, 0) = T(1.0);
    p(kObstacleY, 1) = T(1.0);
    return p;
  });
  return ControlAffineSystem(kStateDim, kControlDim, kDisturbanceDim, std::move(drift),
                             std::move(input_map), std::move(disturbance_map));
}

/// (x - x_d)^2 + (y - y_d)^2 - r^2 at any nesting depth.
template <RealScalar T>
T h1_value(std::span<const T> s, double r) {
  const T dx = s[kX] - s[kObstacleX];
  const T dy = s[kY] - s[kObstacleY];
  return dx * dx + dy * dy - r * r;
}

inline ScalarField h1_field(double r) {
  return ScalarField(kStateDim, [r](auto s) { return h1_value(s, r); });
}

inline double h1(const AugmentedState& s, double r) {
  const StateVector v = s.to_vector();
  return h1_value(v.span(), r);
}

/// Hand-expanded second level: c1 h1 + L_f h1 - M sqrt(eps1 + |L_p h1|^2).
inline double h2_analytic(const AugmentedState& s, const AvoidanceParams& p) {
  const double dx = s.x - s.x_d;
  const double dy = s.y - s.y_d;
  const double lf_h1 = 2.0 * dx * s.v * std::cos(s.theta) + 2.0 * dy * s.v * std::sin(s.theta);
  double out = p.c1 * h1(s, p.r) + lf_h1;
  if (p.M > 0.0) out -= p.M * std::sqrt(p.eps1 + 4.0 * dx * dx + 4.0 * dy * dy);
  return out;
}

struct AppendixLie {
  double lf = 0.0;
  Covector lg;  // over (u_v, u_theta)
  Covector lp;  // over (d_x, d_y)
};

/// L_f h2, L_g h2 and L_p h2 written out term by term.
inline AppendixLie appendix_lie_h2(const AugmentedState& s, const AvoidanceParams& p) {
  const double dx = s.x - s.x_d;
  const double dy = s.y - s.y_d;
  const double c = std::cos(s.theta);
  const double sn = std::sin(s.theta);
  const double delta1 = std::sqrt(p.eps1 + 4.0 * dx * dx + 4.0 * dy * dy);
  const double radial = dx * s.v * c + dy * s.v * sn;
  const double k = 4.0 * p.M / delta1;

  AppendixLie out;
  out.lf = 2.0 * p.c1 * radial + 2.0 * s.v * s.v - k * radial;
  out.lg = Covector{2.0 * dx * c + 2.0 * dy * sn, 2.0 * dy * s.v * c - 2.0 * dx * s.v * sn};
  out.lp = Covector{(k - 2.0 * p.c1) * dx - 2.0 * s.v * c, (k - 2.0 * p.c1) * dy - 2.0 * s.v * sn};
  return out;
}

/// Chain h1 -> h2 with gain c1 at x0, using `disturbance_bound` as M (0 for
/// the disturbance-free agent).
inline BarrierChain build_chain(const AvoidanceParams& p, const AugmentedState& x0,
                                double disturbance_bound) {
  p.validate();
  BarrierChain base(agent_system(), h1_field(p.r), x0.to_vector(), DisturbanceBound(disturbance_bound),
                    p.eps1);
  return extend_chain(base, FixedGain{p.c1}, p.eps2);
}

inline FilterParams filter_params(const AvoidanceParams& p) { return FilterParams{p.c2, 1e-9}; }

// Obstacle truth model, hidden from the agent.

struct ObstacleState {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct ObstacleRate {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;
};

struct UnicycleObstacle {
  Signal speed = ConstantSignal{0.0};
  Signal turn_rate = ConstantSignal{0.0};
};

/// Unit speed with turn rate 2 cos(2t).
inline UnicycleObstacle paper_obstacle_profile() {
  return UnicycleObstacle{ConstantSignal{1.0}, SinusoidSignal{2.0, 2.0, 0.0, 0.0}};
}

inline ObstacleRate obstacle_dynamics(double t, const ObstacleState& o, const UnicycleObstacle& profile) {
  const double v = evaluate(profile.speed, t);
  return ObstacleRate{v * std::cos(o.theta), v * std::sin(o.theta), evaluate(profile.turn_rate, t)};
}

}  // namespace srcbf::unicycle
