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
#include <variant>
#include <vector>

#include "srcbf/errors.hpp"

namespace srcbf::unicycle {

struct ConstantSignal {
  double value = 0.0;
};

/// amplitude * cos(frequency * t + phase) + offset
struct SinusoidSignal {
  double amplitude = 0.0;
  double frequency = 0.0;
  double phase = 0.0;
  double offset = 0.0;
};

/// values[i] on [times[i], times[i+1]); values[0] before times[0].
struct PiecewiseSignal {
  std::vector<double> times;
  std::vector<double> values;
};

/// Linear interpolation between samples, held constant outside the table.
struct TabulatedSignal {
  std::vector<double> times;
  std::vector<double> values;
};

using Signal = std::variant<ConstantSignal, SinusoidSignal, PiecewiseSignal, TabulatedSignal>;

namespace detail {
inline void validate_table(const std::vector<double>& times, const std::vector<double>& values,
                           const char* kind) {
  if (times.empty() || times.size() != values.size()) {
    throw ParameterError(std::string(kind) + " signal needs matching, non-empty time and value lists");
  }
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw ParameterError(std::string(kind) + " signal times must be strictly increasing");
    }
  }
}
}  // namespace detail

inline void validate(const Signal& s) {
  std::visit(
      [](const auto& sig) {
        using S = std::decay_t<decltype(sig)>;
        if constexpr (std::is_same_v<S, PiecewiseSignal>) {
          detail::validate_table(sig.times, sig.values, "piecewise");
        } else if constexpr (std::is_same_v<S, TabulatedSignal>) {
          detail::validate_table(sig.times, sig.values, "table");
        }
      },
      s);
}

inline double evaluate(const Signal& s, double t) {
  return std::visit(
      [t](const auto& sig) -> double {
        using S = std::decay_t<decltype(sig)>;
        if constexpr (std::is_same_v<S, ConstantSignal>) {
          return sig.value;
        } else if constexpr (std::is_same_v<S, SinusoidSignal>) {
          return sig.amplitude * std::cos(sig.frequency * t + sig.phase) + sig.offset;
        } else if constexpr (std::is_same_v<S, PiecewiseSignal>) {
          const auto it = std::upper_bound(sig.times.begin(), sig.times.end(), t);
          if (it == sig.times.begin()) return sig.values.front();
          return sig.values[static_cast<std::size_t>(it - sig.times.begin()) - 1];
        } else {
          if (t <= sig.times.front()) return sig.values.front();
          if (t >= sig.times.back()) return sig.values.back();
          const auto it = std::upper_bound(sig.times.begin(), sig.times.end(), t);
          const std::size_t hi = static_cast<std::size_t>(it - sig.times.begin());
          const std::size_t lo = hi - 1;
          const double w = (t - sig.times[lo]) / (sig.times[hi] - sig.times[lo]);
          return sig.values[lo] + w * (sig.values[hi] - sig.values[lo]);
        }
      },
      s);
}

}  // namespace srcbf::unicycle
