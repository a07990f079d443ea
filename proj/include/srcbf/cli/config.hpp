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

// Scenario text format: one `key = value` per line, dotted keys, `#` starts a
// comment. Signals are written as a kind followed by numbers:
//
//   constant V
//   sinusoid AMPLITUDE FREQUENCY [PHASE [OFFSET]]    A cos(W t + P) + O
//   piecewise T0:V0 T1:V1 ...                        piecewise constant
//   table T0:V0 T1:V1 ...                            linear interpolation

#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <variant>
#include <vector>

#include "srcbf/errors.hpp"
#include "srcbf/sim/scenario.hpp"
#include "srcbf/unicycle/signal.hpp"

namespace srcbf::cli {

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace detail

/// Shortest round-trip decimal representation with '.' as separator.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Parses a finite decimal number; throws ParameterError otherwise.
inline double parse_number(std::string_view s) {
  s = detail::trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ParameterError("expected a finite number, got '" + std::string(s) + "'");
  }
  return v;
}

inline unicycle::Signal parse_signal(std::string_view text) {
  const auto tokens = detail::split_ws(detail::trim(text));
  if (tokens.empty()) throw ParameterError("empty signal");
  const std::string_view kind = tokens.front();
  auto numbers = [&](std::size_t from) {
    std::vector<double> out;
    for (std::size_t i = from; i < tokens.size(); ++i) out.push_back(parse_number(tokens[i]));
    return out;
  };
  auto pairs = [&](auto& sig) {
    if (tokens.size() < 2) throw ParameterError(std::string(kind) + " signal needs at least one T:V pair");
    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto colon = tokens[i].find(':');
      if (colon == std::string_view::npos) {
        throw ParameterError("expected T:V, got '" + std::string(tokens[i]) + "'");
      }
      sig.times.push_back(parse_number(tokens[i].substr(0, colon)));
      sig.values.push_back(parse_number(tokens[i].substr(colon + 1)));
    }
  };

  unicycle::Signal out;
  if (kind == "constant") {
    const auto v = numbers(1);
    if (v.size() != 1) throw ParameterError("constant signal takes exactly one value");
    out = unicycle::ConstantSignal{v[0]};
  } else if (kind == "sinusoid") {
    const auto v = numbers(1);
    if (v.size() < 2 || v.size() > 4) {
      throw ParameterError("sinusoid signal takes AMPLITUDE FREQUENCY [PHASE [OFFSET]]");
    }
    out = unicycle::SinusoidSignal{v[0], v[1], v.size() > 2 ? v[2] : 0.0, v.size() > 3 ? v[3] : 0.0};
  } else if (kind == "piecewise") {
    unicycle::PiecewiseSignal sig;
    pairs(sig);
    out = std::move(sig);
  } else if (kind == "table") {
    unicycle::TabulatedSignal sig;
    pairs(sig);
    out = std::move(sig);
  } else {
    throw ParameterError("unknown signal kind '" + std::string(kind) +
                         "' (expected constant, sinusoid, piecewise or table)");
  }
  unicycle::validate(out);
  return out;
}

inline std::string format_signal(const unicycle::Signal& s) {
  return std::visit(
      [](const auto& sig) -> std::string {
        using S = std::decay_t<decltype(sig)>;
        if constexpr (std::is_same_v<S, unicycle::ConstantSignal>) {
          return "constant " + format_number(sig.value);
        } else if constexpr (std::is_same_v<S, unicycle::SinusoidSignal>) {
          return "sinusoid " + format_number(sig.amplitude) + " " + format_number(sig.frequency) + " " +
                 format_number(sig.phase) + " " + format_number(sig.offset);
        } else {
          std::string out = std::is_same_v<S, unicycle::PiecewiseSignal> ? "piecewise" : "table";
          for (std::size_t i = 0; i < sig.times.size(); ++i) {
            out += " " + format_number(sig.times[i]) + ":" + format_number(sig.values[i]);
          }
          return out;
        }
      },
      s);
}

/// One settable scenario field.
struct FieldSpec {
  std::string key;
  bool required;
  std::function<void(sim::Scenario&, std::string_view)> set;
  std::function<std::string(const sim::Scenario&)> get;
};

namespace detail {

template <class Member>
FieldSpec number_field(std::string key, bool required, Member member) {
  return FieldSpec{
      std::move(key), required,
      [member](sim::Scenario& s, std::string_view v) { member(s) = parse_number(v); },
      [member](const sim::Scenario& s) { return format_number(member(s)); }};
}

inline unicycle::UnicycleObstacle& unicycle_profile(sim::Scenario& s) {
  if (!std::holds_alternative<unicycle::UnicycleObstacle>(s.profile)) {
    throw ParameterError("scenario obstacle is not driven by speed/turn-rate signals");
  }
  return std::get<unicycle::UnicycleObstacle>(s.profile);
}

inline const unicycle::UnicycleObstacle& unicycle_profile(const sim::Scenario& s) {
  const auto* u = std::get_if<unicycle::UnicycleObstacle>(&s.profile);
  if (!u) throw ParameterError("scenario obstacle is not driven by speed/turn-rate signals");
  return *u;
}

}  // namespace detail

/// Every key of the scenario format, in emission order.
inline const std::vector<FieldSpec>& scenario_schema() {
  using detail::number_field;
  using sim::Scenario;
  static const std::vector<FieldSpec> schema = [] {
    std::vector<FieldSpec> f;
    f.push_back({"name", false, [](Scenario& s, std::string_view v) { s.name = std::string(v); },
                 [](const Scenario& s) { return s.name; }});
    f.push_back({"filter.mode", false,
                 [](Scenario& s, std::string_view v) {
                   const auto m = sim::parse_filter_mode(v);
                   if (!m) throw ParameterError("expected 'standard' or 'robust', got '" + std::string(v) + "'");
                   s.mode = *m;
                 },
                 [](const Scenario& s) { return std::string(sim::to_string(s.mode)); }});
    f.push_back(number_field("agent.x", true, [](auto& s) -> auto& { return s.agent.x; }));
    f.push_back(number_field("agent.y", true, [](auto& s) -> auto& { return s.agent.y; }));
    f.push_back(number_field("agent.v", false, [](auto& s) -> auto& { return s.agent.v; }));
    f.push_back(number_field("agent.theta", false, [](auto& s) -> auto& { return s.agent.theta; }));
    f.push_back(number_field("obstacle.x", true, [](auto& s) -> auto& { return s.obstacle.x; }));
    f.push_back(number_field("obstacle.y", true, [](auto& s) -> auto& { return s.obstacle.y; }));
    f.push_back(number_field("obstacle.theta", false, [](auto& s) -> auto& { return s.obstacle.theta; }));
    f.push_back({"obstacle.speed", false,
                 [](Scenario& s, std::string_view v) { detail::unicycle_profile(s).speed = parse_signal(v); },
                 [](const Scenario& s) {
                   return format_signal(detail::unicycle_profile(s).speed);
                 }});
    f.push_back({"obstacle.turn_rate", false,
                 [](Scenario& s, std::string_view v) { detail::unicycle_profile(s).turn_rate = parse_signal(v); },
                 [](const Scenario& s) {
                   return format_signal(detail::unicycle_profile(s).turn_rate);
                 }});
    f.push_back(number_field("avoidance.r", true, [](auto& s) -> auto& { return s.avoidance.r; }));
    f.push_back(number_field("avoidance.M", true, [](auto& s) -> auto& { return s.avoidance.M; }));
    f.push_back(number_field("avoidance.c1", true, [](auto& s) -> auto& { return s.avoidance.c1; }));
    f.push_back(number_field("avoidance.c2", true, [](auto& s) -> auto& { return s.avoidance.c2; }));
    f.push_back(number_field("avoidance.eps1", false, [](auto& s) -> auto& { return s.avoidance.eps1; }));
    f.push_back(number_field("avoidance.eps2", false, [](auto& s) -> auto& { return s.avoidance.eps2; }));
    f.push_back(number_field("nominal.k1", false, [](auto& s) -> auto& { return s.nominal.k1; }));
    f.push_back(number_field("nominal.k2", false, [](auto& s) -> auto& { return s.nominal.k2; }));
    f.push_back(number_field("nominal.v_ref", false, [](auto& s) -> auto& { return s.nominal.v_ref; }));
    f.push_back(number_field("nominal.theta_ref", false, [](auto& s) -> auto& { return s.nominal.theta_ref; }));
    f.push_back(number_field("sim.horizon", false, [](auto& s) -> auto& { return s.horizon; }));
    f.push_back(number_field("sim.dt", false, [](auto& s) -> auto& { return s.dt; }));
    return f;
  }();
  return schema;
}

inline const FieldSpec* find_field(std::string_view key) {
  for (const FieldSpec& f : scenario_schema()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

/// Sets one dotted key; errors name the key (and the line, when known).
inline void set_field(sim::Scenario& s, std::string_view key, std::string_view value, std::size_t line = 0) {
  const FieldSpec* f = find_field(key);
  if (!f) throw ConfigError(std::string(key), line, "unknown key");
  try {
    f->set(s, detail::trim(value));
  } catch (const ParameterError& e) {
    throw ConfigError(std::string(key), line, e.what());
  }
}

/// Applies a `KEY=VALUE` override.
inline void apply_override(sim::Scenario& s, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("", 0, "override '" + std::string(assignment) + "' is not of the form KEY=VALUE");
  }
  set_field(s, detail::trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

/// Parses scenario text. Unknown or duplicate keys, malformed values and
/// missing required keys raise ConfigError; so does a scenario that fails
/// validation as a whole.
inline sim::Scenario parse_scenario(std::string_view text) {
  sim::Scenario s;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected KEY = VALUE");
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("", line_no, "missing key before '='");
    if (!seen.insert(std::string(key)).second) throw ConfigError(std::string(key), line_no, "duplicate key");

    if (key == "schema_version") {
      double v = 0.0;
      try {
        v = parse_number(value);
      } catch (const ParameterError& e) {
        throw ConfigError("schema_version", line_no, e.what());
      }
      if (v != kSchemaVersion) {
        throw ConfigError("schema_version", line_no, "unsupported schema version " + std::string(value));
      }
      continue;
    }
    set_field(s, key, value, line_no);
  }

  for (const FieldSpec& f : scenario_schema()) {
    if (f.required && !seen.contains(f.key)) throw ConfigError(f.key, 0, "missing required field");
  }
  try {
    s.validate();
  } catch (const ParameterError& e) {
    throw ConfigError("", 0, e.what());
  }
  return s;
}

/// Emits every field with resolved defaults; parse_scenario of the result
/// reproduces the scenario.
inline std::string format_scenario(const sim::Scenario& s) {
  if (!std::holds_alternative<unicycle::UnicycleObstacle>(s.profile) || s.custom_nominal) {
    throw ParameterError("scenarios with programmatic profiles or controllers cannot be written as text");
  }
  std::ostringstream out;
  out << "schema_version = " << kSchemaVersion << "\n";
  for (const FieldSpec& f : scenario_schema()) out << f.key << " = " << f.get(s) << "\n";
  return out.str();
}

}  // namespace srcbf::cli
