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

// Minimally intrusive safety filter on the top level h_n of a barrier chain:
//
//   min |u - u0|^2  s.t.  L_f h_n + L_g h_n u - M delta_n >= -c_n h_n
//
// A single affine constraint, so the KKT solution is a projection onto a
// halfspace and no QP solver is involved.

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srcbf/cbf/chain.hpp"
#include "srcbf/errors.hpp"
#include "srcbf/numerics/linalg.hpp"

namespace srcbf {

struct FilterParams {
  /// c_n > 0.
  double gain = 1.0;
  /// Threshold on |L_g h_n|^2 below which an override is refused.
  double singular_tolerance = 1e-9;

  void validate() const {
    if (!(gain > 0.0) || !std::isfinite(gain)) {
      throw ParameterError("filter gain c_n must be finite and > 0");
    }
    if (!(singular_tolerance > 0.0)) throw ParameterError("singular_tolerance must be > 0");
  }
};

struct FilterDecision {
  std::vector<double> u;
  double eta = 0.0;
  bool overridden = false;
  /// Constraint LHS - RHS at the returned u.
  double margin = 0.0;
};

/// Everything the constraint needs at one state. The constraint is affine in
/// u: margin(u) = lf + lg.u - robust_term + gain * h.
struct ConstraintTerms {
  double h = 0.0;
  double lf = 0.0;
  Covector lg;
  /// M * delta_n (zero when M = 0).
  double robust_term = 0.0;
  double gain = 0.0;

  double margin(std::span<const double> u) const { return lf + lg.pair(u) - robust_term + gain * h; }
};

inline ConstraintTerms constraint_terms(const StateVector& x, const BarrierChain& chain,
                                        const FilterParams& params) {
  params.validate();
  const ChainLevel& top = chain.top();
  const LieDerivatives lie = lie_derivatives(top.h, x, chain.system());
  ConstraintTerms out;
  out.h = top.h(x);
  out.lf = lie.lf;
  out.lg = lie.lg;
  const double m = chain.bound().value();
  out.robust_term = m > 0.0 ? m * delta(lie.lp, top.eps) : 0.0;
  out.gain = params.gain;
  return out;
}

inline double eta(const StateVector& x, std::span<const double> u0, const BarrierChain& chain,
                  const FilterParams& params) {
  detail::require_same_size(u0.size(), chain.system().control_dim(), "nominal control");
  return constraint_terms(x, chain, params).margin(u0);
}

inline double constraint_margin(const StateVector& x, std::span<const double> u,
                                const BarrierChain& chain, const FilterParams& params) {
  detail::require_same_size(u.size(), chain.system().control_dim(), "control");
  return constraint_terms(x, chain, params).margin(u);
}

/// Closed-form filter on precomputed terms.
inline FilterDecision filter(const ConstraintTerms& terms, std::span<const double> u0,
                             double singular_tolerance = 1e-9) {
  FilterDecision out;
  out.u.assign(u0.begin(), u0.end());
  out.eta = terms.margin(u0);
  if (out.eta >= 0.0) {
    out.margin = out.eta;
    return out;
  }
  const double lg_sq = terms.lg.squared_norm();
  if (lg_sq < singular_tolerance) throw SingularConstraint(lg_sq, out.eta);

  const double scale = out.eta / lg_sq;
  for (std::size_t i = 0; i < out.u.size(); ++i) out.u[i] -= terms.lg[i] * scale;
  out.overridden = true;
  out.margin = terms.margin(out.u);
  return out;
}

inline FilterDecision filter(const StateVector& x, std::span<const double> u0,
                             const BarrierChain& chain, const FilterParams& params) {
  detail::require_same_size(u0.size(), chain.system().control_dim(), "nominal control");
  return filter(constraint_terms(x, chain, params), u0, params.singular_tolerance);
}

}  // namespace srcbf
