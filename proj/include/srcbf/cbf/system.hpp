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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srcbf/errors.hpp"
#include "srcbf/numerics/field.hpp"
#include "srcbf/numerics/linalg.hpp"

namespace srcbf {

/// x' = f(x) + g(x) u + p(x) d with u in R^m1 and the disturbance d in R^m2.
/// f, g and p are fields so the system can be evaluated at dual-number
/// states when differentiating barrier levels.
class ControlAffineSystem {
 public:
  ControlAffineSystem() = default;
  ControlAffineSystem(std::size_t state_dim, std::size_t control_dim, std::size_t disturbance_dim,
                      VectorField drift, MatrixField input_map, MatrixField disturbance_map)
      : state_dim_(state_dim),
        control_dim_(control_dim),
        disturbance_dim_(disturbance_dim),
        drift_(std::move(drift)),
        input_map_(std::move(input_map)),
        disturbance_map_(std::move(disturbance_map)) {
    if (state_dim_ == 0) throw DimensionError("system state dimension must be positive");
    for (std::size_t d : {drift_.input_dim(), input_map_.input_dim(), disturbance_map_.input_dim()}) {
      if (d != state_dim_) throw DimensionError("system field input dimension disagrees with state_dim");
    }
  }

  std::size_t state_dim() const noexcept { return state_dim_; }
  std::size_t control_dim() const noexcept { return control_dim_; }
  std::size_t disturbance_dim() const noexcept { return disturbance_dim_; }

  template <RealScalar T>
  std::vector<T> f(std::span<const T> x) const {
    std::vector<T> out = drift_(x);
    detail::require_same_size(out.size(), state_dim_, "drift f(x)");
    return out;
  }

  template <RealScalar T>
  Matrix<T> g(std::span<const T> x) const {
    return checked(input_map_(x), control_dim_, "input map g(x)");
  }

  template <RealScalar T>
  Matrix<T> p(std::span<const T> x) const {
    return checked(disturbance_map_(x), disturbance_dim_, "disturbance map p(x)");
  }

  /// f(x) + g(x) u + p(x) d at a plain state.
  StateVector evaluate(const StateVector& x, std::span<const double> u,
                       std::span<const double> d) const {
    detail::require_same_size(u.size(), control_dim_, "control");
    detail::require_same_size(d.size(), disturbance_dim_, "disturbance");
    std::vector<double> out = f(x.span());
    const Matrix<double> gm = g(x.span());
    const Matrix<double> pm = p(x.span());
    for (std::size_t r = 0; r < state_dim_; ++r) {
      for (std::size_t c = 0; c < control_dim_; ++c) out[r] += gm(r, c) * u[c];
      for (std::size_t c = 0; c < disturbance_dim_; ++c) out[r] += pm(r, c) * d[c];
    }
    return StateVector(std::move(out));
  }

 private:
  template <class T>
  Matrix<T> checked(Matrix<T> m, std::size_t cols, const char* what) const {
    if (m.rows() != state_dim_ || m.cols() != cols) {
      throw DimensionError(std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                           std::to_string(m.cols()) + ", expected " + std::to_string(state_dim_) +
                           "x" + std::to_string(cols));
    }
    return m;
  }

  std::size_t state_dim_ = 0;
  std::size_t control_dim_ = 0;
  std::size_t disturbance_dim_ = 0;
  VectorField drift_;
  MatrixField input_map_;
  MatrixField disturbance_map_;
};

}  // namespace srcbf
