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

#include <optional>
#include <string_view>

namespace srcbf::cli {

// Kept byte-identical to scenarios/paper_robust.scn and
// scenarios/paper_standard.scn (checked by the test suite).

inline constexpr std::string_view kPaperRobustScenario = R"(# Moving-obstacle avoidance, agent accounts for the obstacle as a bounded disturbance.
schema_version = 1
name = paper_robust
filter.mode = robust

agent.x = 0
agent.y = 0
agent.v = 0
agent.theta = 0

# Obstacle: unicycle with unit speed and turn rate 2 cos(2t), hidden from the agent.
obstacle.x = 2
obstacle.y = -3
obstacle.theta = 1.5707963267948966
obstacle.speed = constant 1
obstacle.turn_rate = sinusoid 2 2 0 0

avoidance.r = 2
avoidance.M = 1
avoidance.c1 = 3
avoidance.c2 = 1
avoidance.eps1 = 0.01
avoidance.eps2 = 0.01

nominal.k1 = 1
nominal.k2 = 1
nominal.v_ref = 1
nominal.theta_ref = 0

sim.horizon = 10
sim.dt = 0.001
)";

inline constexpr std::string_view kPaperStandardScenario = R"(# Moving-obstacle avoidance, agent ignores the obstacle motion (filter built with M = 0).
schema_version = 1
name = paper_standard
filter.mode = standard

agent.x = 0
agent.y = 0
agent.v = 0
agent.theta = 0

# Obstacle: unicycle with unit speed and turn rate 2 cos(2t), hidden from the agent.
obstacle.x = 2
obstacle.y = -3
obstacle.theta = 1.5707963267948966
obstacle.speed = constant 1
obstacle.turn_rate = sinusoid 2 2 0 0

avoidance.r = 2
avoidance.M = 1
avoidance.c1 = 3
avoidance.c2 = 1
avoidance.eps1 = 0.01
avoidance.eps2 = 0.01

nominal.k1 = 1
nominal.k2 = 1
nominal.v_ref = 1
nominal.theta_ref = 0

sim.horizon = 10
sim.dt = 0.001
)";

inline std::optional<std::string_view> builtin_scenario(std::string_view name) {
  if (name == "paper_robust") return kPaperRobustScenario;
  if (name == "paper_standard") return kPaperStandardScenario;
  return std::nullopt;
}

}  // namespace srcbf::cli
