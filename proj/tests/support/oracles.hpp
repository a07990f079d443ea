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

// Test oracles that do not go through the library: central finite
// differences, random state generators, and a hand-coded disturbance-free
// unicycle pipeline.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace srcbf::testing {

/// Central differences with a fixed step.
inline std::vector<double> central_difference(const std::function<double(const std::vector<double>&)>& f,
                                              std::vector<double> x, double step = 1e-6) {
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double keep = x[j];
    x[j] = keep + step;
    const double up = f(x);
    x[j] = keep - step;
    const double down = f(x);
    x[j] = keep;
    g[j] = (up - down) / (2.0 * step);
  }
  return g;
}

/// |a - b| / max(|b|, 1).
inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

/// ||a - b|| / max(||b||, 1).
inline double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0;
  double ref = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    ref += b[i] * b[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(ref), 1.0);
}

struct StateRanges {
  double min_distance = 0.1;
  double max_distance = 50.0;
  double max_speed = 5.0;
  double max_heading = std::numbers::pi;
};

/// (x, y, v, theta, x_d, y_d) with the obstacle at a uniform distance and
/// bearing from the agent.
inline std::array<double, 6> random_unicycle_state(std::mt19937_64& rng, const StateRanges& r = {}) {
  std::uniform_real_distribution<double> pos(-10.0, 10.0);
  std::uniform_real_distribution<double> dist(r.min_distance, r.max_distance);
  std::uniform_real_distribution<double> bearing(-std::numbers::pi, std::numbers::pi);
  std::uniform_real_distribution<double> speed(-r.max_speed, r.max_speed);
  std::uniform_real_distribution<double> heading(-r.max_heading, r.max_heading);
  const double x = pos(rng);
  const double y = pos(rng);
  const double d = dist(rng);
  const double b = bearing(rng);
  const double v = speed(rng);
  const double th = heading(rng);
  return {x, y, v, th, x + d * std::cos(b), y + d * std::sin(b)};
}

// Disturbance-free pipeline written out by hand: h2 = c1 h1 + L_f h1 and the
// single-constraint filter with class-K gain c2.

struct PlainParams {
  double r = 2.0;
  double c1 = 3.0;
  double c2 = 1.0;
  double k1 = 1.0;
  double k2 = 1.0;
  double v_ref = 1.0;
  double theta_ref = 0.0;
};

inline double plain_h1(const std::array<double, 6>& s, const PlainParams& p) {
  const double dx = s[0] - s[4];
  const double dy = s[1] - s[5];
  return dx * dx + dy * dy - p.r * p.r;
}

inline double plain_h2(const std::array<double, 6>& s, const PlainParams& p) {
  const double dx = s[0] - s[4];
  const double dy = s[1] - s[5];
  return p.c1 * plain_h1(s, p) + 2.0 * s[2] * (dx * std::cos(s[3]) + dy * std::sin(s[3]));
}

/// h3 = c2 h2 + L_f h2 for the disturbance-free chain.
inline double plain_h3(const std::array<double, 6>& s, const PlainParams& p, double c2) {
  const double dx = s[0] - s[4];
  const double dy = s[1] - s[5];
  const double radial = s[2] * (dx * std::cos(s[3]) + dy * std::sin(s[3]));
  return c2 * plain_h2(s, p) + 2.0 * p.c1 * radial + 2.0 * s[2] * s[2];
}

struct PlainConstraint {
  double h = 0.0;
  double lf = 0.0;
  std::array<double, 2> lg{};
};

inline PlainConstraint plain_constraint(const std::array<double, 6>& s, const PlainParams& p) {
  const double dx = s[0] - s[4];
  const double dy = s[1] - s[5];
  const double c = std::cos(s[3]);
  const double sn = std::sin(s[3]);
  PlainConstraint out;
  out.h = plain_h2(s, p);
  out.lf = 2.0 * p.c1 * s[2] * (dx * c + dy * sn) + 2.0 * s[2] * s[2];
  out.lg = {2.0 * (dx * c + dy * sn), 2.0 * s[2] * (dy * c - dx * sn)};
  return out;
}

inline std::array<double, 2> plain_filter(const std::array<double, 6>& s, const PlainParams& p) {
  const std::array<double, 2> u0{-p.k1 * (s[2] - p.v_ref), -p.k2 * (s[3] - p.theta_ref)};
  const PlainConstraint k = plain_constraint(s, p);
  const double eta = k.lf + k.lg[0] * u0[0] + k.lg[1] * u0[1] + p.c2 * k.h;
  const double n2 = k.lg[0] * k.lg[0] + k.lg[1] * k.lg[1];
  if (eta >= 0.0 || n2 < 1e-9) return u0;
  return {u0[0] - k.lg[0] * eta / n2, u0[1] - k.lg[1] * eta / n2};
}

/// Closed loop against an obstacle driving at unit speed with turn rate
/// 2 cos(2t). State: agent (x, y, v, theta), obstacle (x_d, y_d, theta_d).
/// The filter is evaluated at every Runge-Kutta stage.
inline std::vector<std::array<double, 7>> plain_simulate(std::array<double, 7> x, const PlainParams& p,
                                                         double horizon, double dt) {
  using S = std::array<double, 7>;
  auto rhs = [&](double t, const S& z) {
    const std::array<double, 6> a{z[0], z[1], z[2], z[3], z[4], z[5]};
    const std::array<double, 2> u = plain_filter(a, p);
    return S{z[2] * std::cos(z[3]), z[2] * std::sin(z[3]), u[0], u[1], std::cos(z[6]), std::sin(z[6]),
             2.0 * std::cos(2.0 * t)};
  };
  auto shifted = [](const S& z, double a, const S& k) {
    S out;
    for (std::size_t i = 0; i < 7; ++i) out[i] = z[i] + a * k[i];
    return out;
  };
  const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
  std::vector<S> out{x};
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const S k1 = rhs(t, x);
    const S k2 = rhs(t + dt / 2, shifted(x, dt / 2, k1));
    const S k3 = rhs(t + dt / 2, shifted(x, dt / 2, k2));
    const S k4 = rhs(t + dt, shifted(x, dt, k3));
    for (std::size_t i = 0; i < 7; ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    out.push_back(x);
  }
  return out;
}

}  // namespace srcbf::testing
