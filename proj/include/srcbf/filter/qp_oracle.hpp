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

// Exhaustive grid search over controls, used to check the closed-form filter.
// It only evaluates the constraint; it never uses the projection formula.

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "srcbf/errors.hpp"
#include "srcbf/filter/safety_filter.hpp"

namespace srcbf {

/// Grid spacing of qp_oracle for the given radius and step count.
inline double grid_resolution(double search_radius, int grid_steps) {
  return 2.0 * search_radius / static_cast<double>(grid_steps);
}

inline std::vector<double> qp_oracle(const ConstraintTerms& terms, std::span<const double> u0,
                                     double search_radius, int grid_steps) {
  if (grid_steps < 100) throw ParameterError("qp_oracle needs at least 100 grid steps per axis");
  if (!(search_radius > 0.0)) throw ParameterError("qp_oracle needs a positive search radius");
  const std::size_t m = u0.size();
  if (m == 0 || m > 3) throw DimensionError("qp_oracle supports 1 to 3 control inputs");

  const double h = grid_resolution(search_radius, grid_steps);
  const std::size_t per_axis = static_cast<std::size_t>(grid_steps) + 1;
  std::size_t total = 1;
  for (std::size_t k = 0; k < m; ++k) total *= per_axis;

  std::vector<double> u(m), best;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    double dist = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double offset = -search_radius + h * static_cast<double>(rest % per_axis);
      rest /= per_axis;
      u[k] = u0[k] + offset;
      dist += offset * offset;
    }
    if (dist < best_dist && terms.margin(u) >= 0.0) {
      best_dist = dist;
      best = u;
    }
  }
  if (best.empty()) {
    // Distinguish a coarse grid from a genuinely infeasible constraint.
    bool analytic_ok = false;
    try {
      const FilterDecision d = filter(terms, u0);
      analytic_ok = d.margin >= -1e-9;
    } catch (const SingularConstraint&) {
      analytic_ok = false;
    }
    throw InfeasibleGrid(analytic_ok, analytic_ok
                                          ? "no feasible grid point; the grid is too coarse or too small"
                                          : "no feasible control exists near u0");
  }
  return best;
}

inline std::vector<double> qp_oracle(const StateVector& x, std::span<const double> u0,
                                     const BarrierChain& chain, const FilterParams& params,
                                     double search_radius, int grid_steps) {
  return qp_oracle(constraint_terms(x, chain, params), u0, search_radius, grid_steps);
}

}  // namespace srcbf
