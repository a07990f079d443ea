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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srcbf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A numeric parameter is outside its admissible range (eps <= 0, dt <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Vector or matrix dimensions disagree with what a system declared.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A function was evaluated outside its domain or produced a non-finite value.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  IntegrationError(double time, const std::string& what)
      : Error("integration failed at t=" + std::to_string(time) + ": " + what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Raised while building a barrier chain; the closed loop never starts.
class SetupError : public Error {
 public:
  using Error::Error;
};

/// h_1(x0) <= 0: the initial state is outside or on the boundary of the safe set.
class UnsafeInitialization : public SetupError {
 public:
  using SetupError::SetupError;
};

class GainTooSmall : public SetupError {
 public:
  GainTooSmall(std::size_t level, double gain, double bound)
      : SetupError("gain c_" + std::to_string(level) + " = " + std::to_string(gain) +
                   " does not exceed the minimum admissible gain " + std::to_string(bound)),
        level_(level),
        gain_(gain),
        bound_(bound) {}

  std::size_t level() const noexcept { return level_; }
  double gain() const noexcept { return gain_; }
  double bound() const noexcept { return bound_; }

 private:
  std::size_t level_;
  double gain_;
  double bound_;
};

class ChainConstructionError : public SetupError {
 public:
  using SetupError::SetupError;
};

/// eta < 0 but the control has (numerically) no influence on the target barrier.
class SingularConstraint : public Error {
 public:
  SingularConstraint(double lg_norm_sq, double eta)
      : Error("singular safety constraint: |L_g h|^2 = " + std::to_string(lg_norm_sq) +
              " while eta = " + std::to_string(eta)),
        lg_norm_sq_(lg_norm_sq),
        eta_(eta) {}

  double lg_norm_sq() const noexcept { return lg_norm_sq_; }
  double eta() const noexcept { return eta_; }

 private:
  double lg_norm_sq_;
  double eta_;
};

/// Grid search found no feasible control.
class InfeasibleGrid : public Error {
 public:
  InfeasibleGrid(bool analytic_feasible, const std::string& what)
      : Error(what), analytic_feasible_(analytic_feasible) {}

  /// True when the closed-form solution is feasible, i.e. the grid was too coarse.
  bool analytic_feasible() const noexcept { return analytic_feasible_; }

 private:
  bool analytic_feasible_;
};

/// Malformed scenario text or override. `field` is the dotted key, `line` is 0 when unknown.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, std::size_t line, const std::string& what)
      : Error(format(field, line, what)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, std::size_t line, const std::string& what) {
    std::string out;
    if (line != 0) out += "line " + std::to_string(line) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + what;
  }

  std::string field_;
  std::size_t line_;
};

}  // namespace srcbf
