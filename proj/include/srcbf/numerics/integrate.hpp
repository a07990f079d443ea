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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "srcbf/errors.hpp"
#include "srcbf/numerics/linalg.hpp"

namespace srcbf {

namespace detail {

inline StateVector axpy(const StateVector& x, double a, const StateVector& k) {
  require_same_size(x.size(), k.size(), "state derivative");
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * k[i];
  return StateVector(std::move(out));
}

inline void require_finite(const StateVector& k, double t) {
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k[i])) {
      throw IntegrationError(t, "non-finite derivative in entry " + std::to_string(i));
    }
  }
}

}  // namespace detail

/// One classical Runge-Kutta step of x' = dynamics(t, x) from time t.
template <class Dynamics>
StateVector rk4_step(const Dynamics& dynamics, const StateVector& x, double dt, double t = 0.0) {
  if (!(dt > 0.0)) throw ParameterError("rk4_step requires dt > 0");
  const double half = 0.5 * dt;

  const StateVector k1 = dynamics(t, x);
  detail::require_finite(k1, t);
  const StateVector k2 = dynamics(t + half, detail::axpy(x, half, k1));
  detail::require_finite(k2, t + half);
  const StateVector k3 = dynamics(t + half, detail::axpy(x, half, k2));
  detail::require_finite(k3, t + half);
  const StateVector k4 = dynamics(t + dt, detail::axpy(x, dt, k3));
  detail::require_finite(k4, t + dt);

  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return StateVector(std::move(out));
}

/// Number of steps so that t0 + steps*dt first reaches tf (ceil, with a
/// guard against (tf-t0)/dt landing a rounding error above an integer).
inline std::size_t step_count(double t0, double tf, double dt) {
  if (!(dt > 0.0)) throw ParameterError("integration requires dt > 0");
  if (!(tf > t0)) throw ParameterError("integration requires tf > t0");
  const double ratio = (tf - t0) / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

template <class Decision>
struct Sample {
  double t;
  StateVector x;
  Decision decision;
};

template <class Decision>
struct Trajectory {
  std::vector<Sample<Decision>> samples;
  double dt = 0.0;
};

namespace detail {
template <class Decision>
const auto& control_of(const Decision& d) {
  if constexpr (requires { d.u; }) {
    return d.u;
  } else {
    return d;
  }
}
}  // namespace detail

/// Closed-loop fixed-step integration.
///
/// controller(t, x) -> Decision (a control vector, or any type with a `.u`
/// member). It is evaluated at every Runge-Kutta stage, so the scheme keeps
/// its fourth order on smooth closed loops; the stage-1 decision is the one
/// recorded with each sample.
/// disturbance(t, x) is evaluated at every stage as well.
/// dynamics(t, x, u, d) -> StateVector.
/// Samples land on t0 + k*dt for k = 0..step_count(t0, tf, dt).
template <class Dynamics, class Controller, class Disturbance>
auto integrate(const Dynamics& dynamics, const Controller& controller,
               const Disturbance& disturbance, StateVector x0, double t0, double tf, double dt)
    -> Trajectory<std::invoke_result_t<const Controller&, double, const StateVector&>> {
  using Decision = std::invoke_result_t<const Controller&, double, const StateVector&>;
  const std::size_t steps = step_count(t0, tf, dt);

  Trajectory<Decision> out;
  out.dt = dt;
  out.samples.reserve(steps + 1);

  StateVector x = std::move(x0);
  for (std::size_t k = 0;; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    try {
      out.samples.push_back(Sample<Decision>{t, x, controller(t, x)});
      if (k == steps) break;
      const Decision& first = out.samples.back().decision;
      auto closed_loop = [&](double s, const StateVector& xs) {
        if (s == t && &xs == &x) {
          return dynamics(s, xs, detail::control_of(first), disturbance(s, xs));
        }
        const Decision d = controller(s, xs);
        return dynamics(s, xs, detail::control_of(d), disturbance(s, xs));
      };
      x = rk4_step(closed_loop, x, dt, t);
    } catch (const IntegrationError&) {
      throw;
    } catch (const Error& e) {
      throw IntegrationError(t, e.what());
    }
  }
  return out;
}

}  // namespace srcbf
