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
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "srcbf/cli/config.hpp"
#include "srcbf/sim/run.hpp"
#include "srcbf/sim/scenario.hpp"

namespace srcbf::cli {

inline constexpr std::array<std::string_view, 17> kTrajectoryColumns = {
    "t",     "x",       "y",    "v",  "theta", "x_d", "y_d", "u_v_nom", "u_theta_nom",
    "u_v",   "u_theta", "h1",   "h2", "eta",   "override", "singular", "distance"};

namespace detail {

inline void write_record(std::ostream& out, const sim::LogRecord& r, bool with_time) {
  auto num = [&out](double v) { out << ',' << format_number(v); };
  if (with_time) out << format_number(r.t);
  num(r.state.x);
  num(r.state.y);
  num(r.state.v);
  num(r.state.theta);
  num(r.state.x_d);
  num(r.state.y_d);
  num(r.u_nominal[0]);
  num(r.u_nominal[1]);
  num(r.u[0]);
  num(r.u[1]);
  num(r.h1);
  num(r.h2);
  num(r.eta);
  out << ',' << (r.overridden ? 1 : 0) << ',' << (r.singular ? 1 : 0);
  num(r.distance);
}

inline nlohmann::json optional_time(const std::optional<double>& t) {
  return t ? nlohmann::json(*t) : nlohmann::json(nullptr);
}

}  // namespace detail

inline void write_trajectory_csv(std::ostream& out, const sim::TrajectoryLog& log) {
  for (std::size_t i = 0; i < kTrajectoryColumns.size(); ++i) out << (i ? "," : "") << kTrajectoryColumns[i];
  out << '\n';
  for (const sim::LogRecord& r : log.records) {
    detail::write_record(out, r, true);
    out << '\n';
  }
}

/// Both agents side by side, keyed by the shared time grid.
inline void write_compare_csv(std::ostream& out, const sim::TrajectoryLog& standard,
                              const sim::TrajectoryLog& robust) {
  if (standard.records.size() != robust.records.size()) {
    throw DimensionError("compared runs have different sample counts");
  }
  out << "t";
  for (std::string_view prefix : {"standard_", "robust_"}) {
    for (std::size_t i = 1; i < kTrajectoryColumns.size(); ++i) out << ',' << prefix << kTrajectoryColumns[i];
  }
  out << '\n';
  for (std::size_t k = 0; k < standard.records.size(); ++k) {
    out << format_number(standard.records[k].t);
    detail::write_record(out, standard.records[k], false);
    detail::write_record(out, robust.records[k], false);
    out << '\n';
  }
}

inline nlohmann::json events_json(const sim::EventReport& e) {
  return {{"first_override_time", detail::optional_time(e.first_override_time)},
          {"collision_time", detail::optional_time(e.collision_time)},
          {"peak_violation_time", detail::optional_time(e.peak_violation_time)},
          {"resume_time", detail::optional_time(e.resume_time)},
          {"min_h1", e.min_h1},
          {"min_h2", e.min_h2},
          {"min_distance", e.min_distance}};
}

inline nlohmann::json metrics_json(const sim::Metrics& m) {
  return {{"min_distance", m.min_distance},
          {"mean_distance", m.mean_distance},
          {"min_h1", m.min_h1},
          {"min_h2", m.min_h2},
          {"override_duration", m.override_duration},
          {"max_correction", m.max_correction},
          {"floor_violations_h1", m.floor_violations_h1},
          {"floor_violations_h2", m.floor_violations_h2},
          {"singular_steps", m.singular_steps},
          {"min_margin", m.min_margin}};
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline nlohmann::json run_summary(const sim::Scenario& scenario, const sim::RunResult& result) {
  const sim::Metrics m = sim::metrics(result.log);
  return {{"schema_version", kSchemaVersion},
          {"scenario", scenario.name},
          {"fingerprint", hex64(result.log.scenario_fingerprint)},
          {"filter_mode", std::string(sim::to_string(result.log.mode))},
          {"disturbance_bound", result.log.disturbance_bound},
          {"gains", {{"c1", result.log.gains[0]}, {"c2", result.log.gains[1]}}},
          {"dt", result.log.dt},
          {"horizon", scenario.horizon},
          {"samples", result.log.records.size()},
          {"collision", result.events.collision_time.has_value()},
          {"events", events_json(result.events)},
          {"metrics", metrics_json(m)}};
}

}  // namespace srcbf::cli
