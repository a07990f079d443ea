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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "srcbf/cbf/chain.hpp"
#include "srcbf/filter/safety_filter.hpp"
#include "srcbf/numerics/integrate.hpp"
#include "srcbf/sim/scenario.hpp"
#include "srcbf/unicycle/unicycle.hpp"

namespace srcbf::sim {

/// Truth-model state: the augmented state plus the obstacle heading, which
/// the agent never sees.
inline constexpr std::size_t kTruthDim = unicycle::kStateDim + 1;
inline constexpr std::size_t kObstacleHeading = unicycle::kStateDim;

struct LogRecord {
  double t = 0.0;
  AugmentedState state;
  double obstacle_heading = 0.0;
  Control u_nominal{};
  Control u{};
  double h1 = 0.0;
  double h2 = 0.0;
  double eta = 0.0;
  double margin = 0.0;
  bool overridden = false;
  /// Override refused because |L_g h2|^2 was below tolerance; u = u_nominal.
  bool singular = false;
  double distance = 0.0;
};

struct TrajectoryLog {
  std::vector<LogRecord> records;
  std::uint64_t scenario_fingerprint = 0;
  double dt = 0.0;
  FilterMode mode = FilterMode::robust;
  double r = 0.0;
  double disturbance_bound = 0.0;
  /// c_1, c_2.
  std::array<double, 2> gains{};
};

struct EventReport {
  std::optional<double> first_override_time;
  std::optional<double> collision_time;
  /// Time of the most negative h1, when there is a collision.
  std::optional<double> peak_violation_time;
  std::optional<double> resume_time;
  double min_h1 = 0.0;
  double min_h2 = 0.0;
  double min_distance = 0.0;
};

struct RunResult {
  TrajectoryLog log;
  EventReport events;
};

/// Override-free time required after the last override before the agent
/// counts as resumed.
inline constexpr double kResumeDebounce = 0.5;

inline EventReport detect_events(const TrajectoryLog& log) {
  EventReport out;
  if (log.records.empty()) return out;
  out.min_h1 = log.records.front().h1;
  out.min_h2 = log.records.front().h2;
  out.min_distance = log.records.front().distance;
  std::optional<std::size_t> last_override;
  std::size_t argmin_h1 = 0;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const LogRecord& r = log.records[i];
    if (r.overridden) {
      if (!out.first_override_time) out.first_override_time = r.t;
      last_override = i;
    }
    if (r.h1 < 0.0 && !out.collision_time) out.collision_time = r.t;
    if (r.h1 < out.min_h1) {
      out.min_h1 = r.h1;
      argmin_h1 = i;
    }
    out.min_h2 = std::min(out.min_h2, r.h2);
    out.min_distance = std::min(out.min_distance, r.distance);
  }
  if (out.collision_time) out.peak_violation_time = log.records[argmin_h1].t;
  if (last_override && *last_override + 1 < log.records.size()) {
    const double start = log.records[*last_override + 1].t;
    // Tolerate the rounding in k*dt when comparing against the debounce.
    if (log.records.back().t - start >= kResumeDebounce - 1e-9) out.resume_time = start;
  }
  return out;
}

struct Metrics {
  double min_distance = 0.0;
  double mean_distance = 0.0;
  double min_h1 = 0.0;
  double min_h2 = 0.0;
  double override_duration = 0.0;
  double max_correction = 0.0;
  std::size_t floor_violations_h1 = 0;
  std::size_t floor_violations_h2 = 0;
  std::size_t singular_steps = 0;
  /// Smallest constraint margin over non-singular steps.
  double min_margin = 0.0;
};

/// Summary statistics. A floor violation is a step with
/// h_i(t) < h_i(t0) e^{-c_i (t - t0)} - floor_tolerance.
inline Metrics metrics(const TrajectoryLog& log, double floor_tolerance = 1e-6) {
  Metrics m;
  if (log.records.empty()) return m;
  const LogRecord& first = log.records.front();
  m.min_distance = first.distance;
  m.min_h1 = first.h1;
  m.min_h2 = first.h2;
  m.min_margin = first.margin;
  double distance_sum = 0.0;
  std::size_t override_steps = 0;
  for (const LogRecord& r : log.records) {
    m.min_distance = std::min(m.min_distance, r.distance);
    m.min_h1 = std::min(m.min_h1, r.h1);
    m.min_h2 = std::min(m.min_h2, r.h2);
    distance_sum += r.distance;
    if (r.overridden) ++override_steps;
    m.max_correction = std::max(m.max_correction, std::hypot(r.u[0] - r.u_nominal[0], r.u[1] - r.u_nominal[1]));
    if (r.h1 < exponential_floor(first.h1, log.gains[0], r.t, first.t) - floor_tolerance) ++m.floor_violations_h1;
    if (r.h2 < exponential_floor(first.h2, log.gains[1], r.t, first.t) - floor_tolerance) ++m.floor_violations_h2;
    if (r.singular) {
      ++m.singular_steps;
    } else {
      m.min_margin = std::min(m.min_margin, r.margin);
    }
  }
  m.override_duration = static_cast<double>(override_steps) * log.dt;
  m.mean_distance = distance_sum / static_cast<double>(log.records.size());
  return m;
}

/// Closed loop of agent, safety filter and obstacle truth model.
/// Throws SetupError (chain construction) before integrating; singular
/// filter steps are logged and the nominal control is applied.
inline RunResult run(const Scenario& scenario) {
  scenario.validate();
  const AugmentedState x0 = scenario.initial_state();
  const BarrierChain chain = unicycle::build_chain(scenario.avoidance, x0, scenario.effective_bound());
  const FilterParams fparams = unicycle::filter_params(scenario.avoidance);
  const double r = scenario.avoidance.r;

  auto controller = [&](double t, const StateVector& truth) {
    LogRecord rec;
    rec.t = t;
    rec.state = AugmentedState::from_vector(truth.span());
    rec.obstacle_heading = truth[kObstacleHeading];
    rec.u_nominal = scenario.custom_nominal ? scenario.custom_nominal(t, rec.state)
                                            : nominal_control(rec.state, scenario.nominal);
    const StateVector x = rec.state.to_vector();
    const ConstraintTerms terms = constraint_terms(x, chain, fparams);
    rec.h1 = unicycle::h1(rec.state, r);
    rec.h2 = terms.h;
    try {
      const FilterDecision d = filter(terms, rec.u_nominal, fparams.singular_tolerance);
      rec.u = {d.u[0], d.u[1]};
      rec.eta = d.eta;
      rec.margin = d.margin;
      rec.overridden = d.overridden;
    } catch (const SingularConstraint& e) {
      rec.u = rec.u_nominal;
      rec.eta = e.eta();
      rec.margin = e.eta();
      rec.singular = true;
    }
    rec.distance = rec.state.distance();
    return rec;
  };

  auto obstacle_rate = [&](double t, const StateVector& truth) -> std::array<double, 3> {
    if (const auto* uni = std::get_if<UnicycleObstacle>(&scenario.profile)) {
      const ObstacleState o{truth[unicycle::kObstacleX], truth[unicycle::kObstacleY], truth[kObstacleHeading]};
      const unicycle::ObstacleRate rate = unicycle::obstacle_dynamics(t, o, *uni);
      return {rate.dx, rate.dy, rate.dtheta};
    }
    const auto& field = std::get<VelocityDisturbance>(scenario.profile);
    const auto d = field(t, AugmentedState::from_vector(truth.span()));
    return {d[0], d[1], 0.0};
  };

  auto dynamics = [](double, const StateVector& s, const Control& u, const std::array<double, 3>& d) {
    const double v = s[unicycle::kV];
    const double th = s[unicycle::kTheta];
    return StateVector{v * std::cos(th), v * std::sin(th), u[0], u[1], d[0], d[1], d[2]};
  };

  StateVector truth0{x0.x, x0.y, x0.v, x0.theta, x0.x_d, x0.y_d, scenario.obstacle.theta};
  auto traj = integrate(dynamics, controller, obstacle_rate, std::move(truth0), 0.0, scenario.horizon,
                        scenario.dt);

  RunResult out;
  out.log.scenario_fingerprint = fingerprint(scenario);
  out.log.dt = scenario.dt;
  out.log.mode = scenario.mode;
  out.log.r = r;
  out.log.disturbance_bound = scenario.effective_bound();
  out.log.gains = {chain.level(1).gain, fparams.gain};
  out.log.records.reserve(traj.samples.size());
  for (auto& sample : traj.samples) out.log.records.push_back(std::move(sample.decision));
  out.events = detect_events(out.log);
  return out;
}

}  // namespace srcbf::sim
