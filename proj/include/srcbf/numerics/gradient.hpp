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

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srcbf/errors.hpp"
#include "srcbf/numerics/dual.hpp"
#include "srcbf/numerics/linalg.hpp"

namespace srcbf {

/// Value and derivative of `field` at x along `dir`, in one dual pass.
/// `field` must accept std::span<const Dual<T>>.
template <RealScalar T, class F>
std::pair<T, T> directional_derivative(const F& field, std::span<const T> x,
                                       std::span<const T> dir) {
  detail::require_same_size(x.size(), dir.size(), "directional derivative");
  const std::vector<Dual<T>> lifted = seed(x, dir);
  Dual<T> r = field(std::span<const Dual<T>>(lifted));
  return {std::move(r.value), std::move(r.deriv)};
}

/// Exact gradient by forward mode, one pass per basis direction.
template <class F>
Covector gradient(const F& field, const StateVector& x) {
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const std::vector<Dual<double>> lifted = seed_basis(x.span(), j);
    Dual<double> r;
    try {
      r = field(std::span<const Dual<double>>(lifted));
    } catch (const DomainError& e) {
      throw DomainError("gradient entry " + std::to_string(j) + ": " + e.what());
    }
    if (!all_finite(r)) {
      throw DomainError("gradient entry " + std::to_string(j) + " is not finite");
    }
    g[j] = r.deriv;
  }
  return Covector(std::move(g));
}

}  // namespace srcbf
