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

// Subcommands of srcbf_sim. Each returns a process exit status:
//   0 success, 1 runtime failure, 2 invalid configuration,
//   3 barrier chain construction failed, 4 output could not be written.

#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "srcbf/cli/builtin_scenarios.hpp"
#include "srcbf/cli/config.hpp"
#include "srcbf/cli/output.hpp"
#include "srcbf/errors.hpp"
#include "srcbf/sim/batch.hpp"
#include "srcbf/sim/run.hpp"
#include "srcbf/unicycle/unicycle.hpp"

namespace srcbf::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,
  kExitValidation = 2,
  kExitSetup = 3,
  kExitOutput = 4,
};

struct RunConfig {
  /// Scenario file path, or the name of a built-in scenario.
  std::string config;
  std::filesystem::path out_dir = "out";
  std::optional<double> dt;
  std::optional<double> horizon;
  /// KEY=VALUE overrides applied after loading, in order.
  std::vector<std::string> overrides;
  bool force = false;
  bool quiet = false;
  /// Sweep: dotted key and the values it takes.
  std::string sweep_param;
  std::vector<std::string> sweep_values;
};

class OutputError : public Error {
 public:
  using Error::Error;
};

inline sim::Scenario load_scenario(const RunConfig& cfg) {
  if (cfg.config.empty()) throw ConfigError("--config", 0, "no scenario given");
  std::string text;
  std::error_code ec;
  if (std::filesystem::is_regular_file(cfg.config, ec)) {
    std::ifstream in(cfg.config, std::ios::binary);
    if (!in) throw ConfigError("--config", 0, "cannot read " + cfg.config);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  } else if (const auto builtin = builtin_scenario(cfg.config)) {
    text = std::string(*builtin);
  } else {
    throw ConfigError("--config", 0, "'" + cfg.config + "' is neither a file nor a built-in scenario");
  }

  sim::Scenario s = parse_scenario(text);
  for (const std::string& o : cfg.overrides) apply_override(s, o);
  if (cfg.dt) s.dt = *cfg.dt;
  if (cfg.horizon) s.horizon = *cfg.horizon;
  try {
    s.validate();
  } catch (const ParameterError& e) {
    throw ConfigError("", 0, e.what());
  }
  return s;
}

namespace detail {

/// Creates the output directory and refuses to replace existing files
/// unless forced.
inline void prepare_outputs(const RunConfig& cfg, const std::vector<std::string>& files) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw OutputError("cannot create output directory " + cfg.out_dir.string() + ": " + ec.message());
  if (cfg.force) return;
  for (const std::string& f : files) {
    if (std::filesystem::exists(cfg.out_dir / f)) {
      throw OutputError((cfg.out_dir / f).string() + " already exists (use --force to overwrite)");
    }
  }
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw OutputError("failed writing " + path.string());
}

inline std::string csv_time(const std::optional<double>& t) { return t ? format_number(*t) : std::string(); }

inline std::string describe(const std::optional<double>& t) {
  return t ? format_number(*t) + " s" : std::string("none");
}

/// Runs `body`, mapping library errors to exit codes with a diagnostic on err.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "srcbf_sim: invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ParameterError& e) {
    err << "srcbf_sim: invalid configuration: " << e.what() << '\n';
    return kExitValidation;
  } catch (const SetupError& e) {
    err << "srcbf_sim: barrier chain construction failed: " << e.what() << '\n';
    return kExitSetup;
  } catch (const OutputError& e) {
    err << "srcbf_sim: " << e.what() << '\n';
    return kExitOutput;
  } catch (const std::exception& e) {
    err << "srcbf_sim: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace detail

/// Parses the scenario and checks that the barrier chain can be built.
inline int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const sim::Scenario s = load_scenario(cfg);
    unicycle::build_chain(s.avoidance, s.initial_state(), s.effective_bound());
    if (!cfg.quiet) out << format_scenario(s);
    return kExitOk;
  });
}

/// Writes trajectory.csv, summary.json and the resolved scenario.scn.
inline int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const sim::Scenario s = load_scenario(cfg);
    detail::prepare_outputs(cfg, {"trajectory.csv", "summary.json", "scenario.scn"});
    const sim::RunResult result = sim::run(s);

    std::ostringstream csv;
    write_trajectory_csv(csv, result.log);
    const nlohmann::json summary = run_summary(s, result);
    detail::write_file(cfg.out_dir / "trajectory.csv", csv.str());
    detail::write_file(cfg.out_dir / "summary.json", summary.dump(2) + "\n");
    detail::write_file(cfg.out_dir / "scenario.scn", format_scenario(s));

    if (!cfg.quiet) {
      out << s.name << " (" << sim::to_string(s.mode) << "): " << result.log.records.size() << " samples, "
          << "collision " << detail::describe(result.events.collision_time) << ", min distance "
          << format_number(result.events.min_distance) << '\n';
    }
    return kExitOk;
  });
}

/// Standard and robust agents against the same obstacle; writes compare.csv,
/// compare_summary.json and scenario.scn.
inline int cmd_compare(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const sim::Scenario base = load_scenario(cfg);
    detail::prepare_outputs(cfg, {"compare.csv", "compare_summary.json", "scenario.scn"});

    std::vector<sim::Scenario> pair(2, base);
    pair[0].mode = sim::FilterMode::standard;
    pair[1].mode = sim::FilterMode::robust;
    // Run each agent here rather than through run_batch so setup errors keep
    // their exit code.
    const sim::RunResult standard = sim::run(pair[0]);
    const sim::RunResult robust = sim::run(pair[1]);

    std::ostringstream csv;
    write_compare_csv(csv, standard.log, robust.log);
    const nlohmann::json summary = {{"schema_version", kSchemaVersion},
                                    {"scenario", base.name},
                                    {"standard", run_summary(pair[0], standard)},
                                    {"robust", run_summary(pair[1], robust)}};
    detail::write_file(cfg.out_dir / "compare.csv", csv.str());
    detail::write_file(cfg.out_dir / "compare_summary.json", summary.dump(2) + "\n");
    detail::write_file(cfg.out_dir / "scenario.scn", format_scenario(base));

    if (!cfg.quiet) {
      for (const auto* r : {&standard, &robust}) {
        out << sim::to_string(r->log.mode) << ": min distance " << format_number(r->events.min_distance)
            << ", collision " << detail::describe(r->events.collision_time) << ", first override "
            << detail::describe(r->events.first_override_time) << ", resume "
            << detail::describe(r->events.resume_time) << '\n';
      }
    }
    return kExitOk;
  });
}

/// One run per value of `sweep_param`; writes sweep.csv and sweep.json.
/// Failed runs are reported in the table and do not stop the sweep.
inline int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    if (cfg.sweep_param.empty()) throw ConfigError("--param", 0, "no sweep parameter given");
    if (cfg.sweep_values.empty()) throw ConfigError("--values", 0, "sweep value list is empty");
    if (!find_field(cfg.sweep_param)) throw ConfigError(cfg.sweep_param, 0, "unknown key");
    const sim::Scenario base = load_scenario(cfg);

    std::vector<sim::Scenario> runs;
    for (const std::string& v : cfg.sweep_values) {
      sim::Scenario s = base;
      set_field(s, cfg.sweep_param, v);
      runs.push_back(std::move(s));
    }
    detail::prepare_outputs(cfg, {"sweep.csv", "sweep.json"});
    const std::vector<sim::BatchOutcome> outcomes = sim::run_batch(runs);

    std::ostringstream csv;
    csv << "param,value,status,min_distance,override_duration,first_override_time,collision_time,"
           "resume_time,min_h1,min_h2,error\n";
    nlohmann::json rows = nlohmann::json::array();
    std::size_t failures = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      const sim::BatchOutcome& o = outcomes[i];
      csv << cfg.sweep_param << ',' << cfg.sweep_values[i] << ',';
      nlohmann::json row = {{"value", cfg.sweep_values[i]}};
      if (o.result) {
        const sim::Metrics m = sim::metrics(o.result->log);
        const sim::EventReport& e = o.result->events;
        csv << "ok," << format_number(m.min_distance) << ',' << format_number(m.override_duration) << ','
            << detail::csv_time(e.first_override_time) << ',' << detail::csv_time(e.collision_time) << ','
            << detail::csv_time(e.resume_time) << ',' << format_number(m.min_h1) << ','
            << format_number(m.min_h2) << ",\n";
        row["status"] = "ok";
        row["summary"] = run_summary(runs[i], *o.result);
      } else {
        ++failures;
        std::string msg = o.error;
        for (char& c : msg) {
          if (c == ',' || c == '\n') c = ';';
        }
        const char* status = o.failure == sim::FailureKind::setup        ? "setup_error"
                             : o.failure == sim::FailureKind::validation ? "invalid"
                                                                          : "failed";
        csv << status << ",,,,,,,," << msg << '\n';
        row["status"] = status;
        row["error"] = o.error;
      }
      rows.push_back(std::move(row));
    }
    const nlohmann::json summary = {{"schema_version", kSchemaVersion},
                                    {"scenario", base.name},
                                    {"param", cfg.sweep_param},
                                    {"runs", rows}};
    detail::write_file(cfg.out_dir / "sweep.csv", csv.str());
    detail::write_file(cfg.out_dir / "sweep.json", summary.dump(2) + "\n");
    if (!cfg.quiet) {
      out << "sweep over " << cfg.sweep_param << ": " << outcomes.size() << " runs, " << failures
          << " failed\n";
    }
    return kExitOk;
  });
}

}  // namespace srcbf::cli
