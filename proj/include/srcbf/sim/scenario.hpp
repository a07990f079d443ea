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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "srcbf/errors.hpp"
#include "srcbf/unicycle/signal.hpp"
#include "srcbf/unicycle/unicycle.hpp"

namespace srcbf::sim {

using unicycle::AugmentedState;
using unicycle::AvoidanceParams;
using unicycle::ObstacleState;
using unicycle::UnicycleObstacle;

using Control = std::array<double, 2>;

enum class FilterMode {
  standard,  // filter built with M = 0
  robust,
};

inline std::string_view to_string(FilterMode m) { return m == FilterMode::robust ? "robust" : "standard"; }

inline std::optional<FilterMode> parse_filter_mode(std::string_view s) {
  if (s == "robust") return FilterMode::robust;
  if (s == "standard") return FilterMode::standard;
  return std::nullopt;
}

struct AgentPose {
  double x = 0.0;
  double y = 0.0;
  double v = 0.0;
  double theta = 0.0;
};

struct NominalGains {
  double k1 = 1.0;
  double k2 = 1.0;
  double v_ref = 1.0;
  double theta_ref = 0.0;
};

/// Drive toward (v_ref, theta_ref): (-k1 (v - v_ref), -k2 (theta - theta_ref)).
inline Control nominal_control(const AugmentedState& s, const NominalGains& g) {
  return {-g.k1 * (s.v - g.v_ref), -g.k2 * (s.theta - g.theta_ref)};
}

/// Replaces the proportional nominal law when set.
using NominalPolicy = std::function<Control(double t, const AugmentedState&)>;

/// Obstacle velocity (d_x, d_y) as a function of time and the full state.
using VelocityDisturbance = std::function<std::array<double, 2>(double t, const AugmentedState&)>;

using ObstacleProfile = std::variant<UnicycleObstacle, VelocityDisturbance>;

struct Scenario {
  std::string name = "scenario";
  AgentPose agent;
  ObstacleState obstacle;
  ObstacleProfile profile = UnicycleObstacle{};
  AvoidanceParams avoidance;
  NominalGains nominal;
  NominalPolicy custom_nominal;
  double horizon = 10.0;
  double dt = 1e-3;
  FilterMode mode = FilterMode::robust;

  /// M as seen by the filter.
  double effective_bound() const { return mode == FilterMode::robust ? avoidance.M : 0.0; }

  AugmentedState initial_state() const {
    return {agent.x, agent.y, agent.v, agent.theta, obstacle.x, obstacle.y};
  }

  void validate() const {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw ParameterError("sim.horizon must be > 0");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("sim.dt must be > 0");
    if (dt > horizon) throw ParameterError("sim.dt must not exceed sim.horizon");
    for (double v : {agent.x, agent.y, agent.v, agent.theta, obstacle.x, obstacle.y, obstacle.theta}) {
      if (!std::isfinite(v)) throw ParameterError("initial state entries must be finite");
    }
    avoidance.validate();
    if (const auto* u = std::get_if<UnicycleObstacle>(&profile)) {
      unicycle::validate(u->speed);
      unicycle::validate(u->turn_rate);
    } else if (!std::get<VelocityDisturbance>(profile)) {
      throw ParameterError("velocity disturbance profile is empty");
    }
  }
};

/// The moving-obstacle experiment: agent at rest at the origin heading +x,
/// obstacle at (2, -3) heading +y with unit speed and turn rate 2 cos(2t).
inline Scenario paper_scenario(FilterMode mode) {
  Scenario s;
  s.name = mode == FilterMode::robust ? "paper_robust" : "paper_standard";
  s.agent = AgentPose{0.0, 0.0, 0.0, 0.0};
  s.obstacle = ObstacleState{2.0, -3.0, std::numbers::pi / 2.0};
  s.profile = unicycle::paper_obstacle_profile();
  s.avoidance = AvoidanceParams{2.0, 1.0, 3.0, 1.0, 0.01, 0.01};
  s.nominal = NominalGains{1.0, 1.0, 1.0, 0.0};
  s.horizon = 10.0;
  s.dt = 1e-3;
  s.mode = mode;
  return s;
}

namespace detail {

class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void real(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    bytes(&bits, sizeof bits);
  }
  void text(std::string_view s) {
    bytes(s.data(), s.size());
    real(static_cast<double>(s.size()));
  }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

inline void hash_signal(Fnv1a& h, const unicycle::Signal& s) {
  h.real(static_cast<double>(s.index()));
  std::visit(
      [&h](const auto& sig) {
        using S = std::decay_t<decltype(sig)>;
        if constexpr (std::is_same_v<S, unicycle::ConstantSignal>) {
          h.real(sig.value);
        } else if constexpr (std::is_same_v<S, unicycle::SinusoidSignal>) {
          for (double v : {sig.amplitude, sig.frequency, sig.phase, sig.offset}) h.real(v);
        } else {
          for (double v : sig.times) h.real(v);
          for (double v : sig.values) h.real(v);
        }
      },
      s);
}

}  // namespace detail

/// Stable 64-bit digest of every resolved scenario field. Custom function
/// members only contribute a presence flag.
inline std::uint64_t fingerprint(const Scenario& s) {
  detail::Fnv1a h;
  h.text(s.name);
  h.text(to_string(s.mode));
  for (double v : {s.agent.x, s.agent.y, s.agent.v, s.agent.theta, s.obstacle.x, s.obstacle.y,
                   s.obstacle.theta, s.avoidance.r, s.avoidance.M, s.avoidance.c1, s.avoidance.c2,
                   s.avoidance.eps1, s.avoidance.eps2, s.nominal.k1, s.nominal.k2, s.nominal.v_ref,
                   s.nominal.theta_ref, s.horizon, s.dt}) {
    h.real(v);
  }
  if (const auto* u = std::get_if<UnicycleObstacle>(&s.profile)) {
    detail::hash_signal(h, u->speed);
    detail::hash_signal(h, u->turn_rate);
  } else {
    h.text("velocity-disturbance");
  }
  h.real(s.custom_nominal ? 1.0 : 0.0);
  return h.value();
}

}  // namespace srcbf::sim
