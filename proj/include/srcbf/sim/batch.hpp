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

#include <exception>
#include <future>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srcbf/errors.hpp"
#include "srcbf/sim/run.hpp"

namespace srcbf::sim {

enum class FailureKind { none, validation, setup, runtime };

struct BatchOutcome {
  std::optional<RunResult> result;
  FailureKind failure = FailureKind::none;
  std::string error;
};

inline BatchOutcome run_captured(const Scenario& scenario) {
  BatchOutcome out;
  try {
    out.result = run(scenario);
  } catch (const SetupError& e) {
    out.failure = FailureKind::setup;
    out.error = e.what();
  } catch (const ParameterError& e) {
    out.failure = FailureKind::validation;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.failure = FailureKind::runtime;
    out.error = e.what();
  }
  return out;
}

/// Runs independent scenarios concurrently. Outcomes keep input order; a
/// failing run does not affect the others.
inline std::vector<BatchOutcome> run_batch(std::span<const Scenario> scenarios) {
  std::vector<std::future<BatchOutcome>> pending;
  pending.reserve(scenarios.size());
  for (const Scenario& s : scenarios) {
    pending.push_back(std::async(std::launch::async, [&s] { return run_captured(s); }));
  }
  std::vector<BatchOutcome> out;
  out.reserve(pending.size());
  for (auto& f : pending) out.push_back(f.get());
  return out;
}

}  // namespace srcbf::sim
