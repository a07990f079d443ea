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

// Robust backstepping chain of barrier functions:
//
//   h_1 = user candidate
//   h_i = c_{i-1} h_{i-1} + L_f h_{i-1} - M * delta_{i-1}
//   delta_k = sqrt(eps_k + |L_p h_k|^2)
//
// With M = 0 the delta terms vanish and the chain is the disturbance-free one.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "srcbf/cbf/system.hpp"
#include "srcbf/errors.hpp"
#include "srcbf/numerics/dual.hpp"
#include "srcbf/numerics/field.hpp"
#include "srcbf/numerics/gradient.hpp"
#include "srcbf/numerics/linalg.hpp"

namespace srcbf {

inline constexpr double kDefaultSmoothing = 0.01;

/// Upper bound M on |d|. Zero recovers the disturbance-free formulas.
class DisturbanceBound {
 public:
  constexpr DisturbanceBound() = default;
  explicit DisturbanceBound(double m) : value_(m) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw ParameterError("disturbance bound must be finite and >= 0, got " + std::to_string(m));
    }
  }
  double value() const noexcept { return value_; }
  bool active() const noexcept { return value_ > 0.0; }

 private:
  double value_ = 0.0;
};

namespace detail {
inline void require_smoothing(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ParameterError("smoothing factor must be finite and > 0, got " + std::to_string(eps));
  }
}
}  // namespace detail

/// sqrt(eps + |lp|^2) at any nesting depth.
template <RealScalar T>
T delta_term(std::span<const T> lp, double eps) {
  T sum(eps);
  for (const T& e : lp) sum = sum + e * e;
  return checked_sqrt(sum);
}

/// Smooth upper bound on |L_p h|; strictly larger than |lp_h| for eps > 0.
inline double delta(const Covector& lp_h, double eps) {
  detail::require_smoothing(eps);
  return delta_term(lp_h.span(), eps);
}

struct LieDerivatives {
  double lf = 0.0;
  Covector lg;
  Covector lp;
};

/// L_f h, L_g h and L_p h at x from the exact forward-mode gradient of h.
template <class H>
LieDerivatives lie_derivatives(const H& h, const StateVector& x, const ControlAffineSystem& system) {
  detail::require_same_size(x.size(), system.state_dim(), "state");
  const Covector grad = gradient(h, x);
  LieDerivatives out;
  out.lf = grad.pair(system.f(x.span()));
  out.lg = Covector(row_times(grad.span(), system.g(x.span())));
  out.lp = Covector(row_times(grad.span(), system.p(x.span())));
  return out;
}

/// h, L_f h and (optionally) L_p h at a depth-D state, by directional dual
/// passes along f and along each column of p. Needs h at depth D + 1.
template <int D>
struct LevelTerms {
  Real<D> value;
  Real<D> lf;
  std::vector<Real<D>> lp;
};

template <int D>
  requires(D < kMaxDepth)
LevelTerms<D> level_terms(const ScalarField& h, const ControlAffineSystem& system,
                          std::span<const Real<D>> x, bool with_disturbance) {
  using T = Real<D>;
  LevelTerms<D> out;
  const std::vector<T> f = system.f(x);
  auto [value, lf] = directional_derivative<T>(h, x, std::span<const T>(f));
  out.value = std::move(value);
  out.lf = std::move(lf);
  if (with_disturbance) {
    const Matrix<T> p = system.p(x);
    out.lp.reserve(p.cols());
    for (std::size_t k = 0; k < p.cols(); ++k) {
      const std::vector<T> col = column(p, k);
      out.lp.push_back(directional_derivative<T>(h, x, std::span<const T>(col)).second);
    }
  }
  return out;
}

/// Smallest admissible gain c_{i-1}: any c strictly above it makes h_i(x0) > 0.
inline double min_gain(double h_prev_at_x0, double lf_prev_at_x0, double delta_prev_at_x0,
                       double disturbance_bound) {
  if (!(h_prev_at_x0 > 0.0)) {
    throw UnsafeInitialization("barrier value at the initial state is " +
                               std::to_string(h_prev_at_x0) + "; it must be strictly positive");
  }
  return std::max(0.0, (-lf_prev_at_x0 + disturbance_bound * delta_prev_at_x0) / h_prev_at_x0);
}

struct FixedGain {
  double value;
};

/// c = max(margin * min_gain, floor).
struct AutoGain {
  double margin = 1.5;
  double floor = 1.0;
};

using GainPolicy = std::variant<FixedGain, AutoGain>;

struct ChainLevel {
  ScalarField h;
  /// c_i, used to build level i + 1. Zero on the top level (its gain is the
  /// filter's).
  double gain = 0.0;
  /// eps_i, smoothing of delta_i.
  double eps = kDefaultSmoothing;
};

class BarrierChain;
BarrierChain extend_chain(const BarrierChain& chain, const GainPolicy& policy,
                          std::optional<double> next_eps);

/// Immutable chain h_1 ... h_n validated at the initial state x0.
class BarrierChain {
 public:
  BarrierChain(ControlAffineSystem system, ScalarField candidate, StateVector x0,
               DisturbanceBound bound, double eps = kDefaultSmoothing)
      : system_(std::move(system)), x0_(std::move(x0)), bound_(bound) {
    detail::require_smoothing(eps);
    detail::require_same_size(x0_.size(), system_.state_dim(), "initial state");
    detail::require_same_size(candidate.input_dim(), system_.state_dim(), "candidate barrier");
    const double h0 = candidate(x0_);
    if (!(h0 > 0.0)) {
      throw UnsafeInitialization("h_1(x0) = " + std::to_string(h0) +
                                 "; the initial state must lie strictly inside the safe set");
    }
    levels_.push_back(ChainLevel{std::move(candidate), 0.0, eps});
  }

  const ControlAffineSystem& system() const noexcept { return system_; }
  const StateVector& initial_state() const noexcept { return x0_; }
  DisturbanceBound bound() const noexcept { return bound_; }
  std::span<const ChainLevel> levels() const noexcept { return levels_; }
  const ChainLevel& level(std::size_t i) const { return levels_.at(i - 1); }  // 1-based
  const ChainLevel& top() const noexcept { return levels_.back(); }
  std::size_t relative_degree() const noexcept { return levels_.size(); }

  /// h_i(x), 1-based.
  double value(std::size_t i, const StateVector& x) const { return level(i).h(x); }

 private:
  friend BarrierChain extend_chain(const BarrierChain&, const GainPolicy&, std::optional<double>);

  ControlAffineSystem system_;
  StateVector x0_;
  DisturbanceBound bound_;
  std::vector<ChainLevel> levels_;
};

namespace detail {

inline ScalarField next_level(ScalarField prev, ControlAffineSystem system, double gain, double m,
                              double eps) {
  const std::size_t n = system.state_dim();
  return ScalarField::depthwise(
      n, [prev = std::move(prev), system = std::move(system), gain, m, eps](
             auto tag, auto x) -> Real<decltype(tag)::value> {
        constexpr int D = decltype(tag)::value;
        using T = Real<D>;
        if constexpr (D >= kMaxDepth) {
          throw DomainError("barrier chain is deeper than the supported differentiation depth " +
                            std::to_string(kMaxDepth));
        } else {
          LevelTerms<D> terms = level_terms<D>(prev, system, x, m > 0.0);
          T out = gain * terms.value + terms.lf;
          if (m > 0.0) out = out - m * delta_term(std::span<const T>(terms.lp), eps);
          return out;
        }
      });
}

}  // namespace detail

/// Appends h_{n+1} = c_n h_n + L_f h_n - M delta_n and validates it at x0.
inline BarrierChain extend_chain(const BarrierChain& chain, const GainPolicy& policy,
                                 std::optional<double> next_eps = std::nullopt) {
  const double eps_next = next_eps.value_or(kDefaultSmoothing);
  detail::require_smoothing(eps_next);
  if (static_cast<int>(chain.relative_degree()) >= kMaxDepth) {
    throw ChainConstructionError("relative degree above " + std::to_string(kMaxDepth) +
                                 " is not supported");
  }

  const std::size_t i = chain.relative_degree();  // index of the current top level
  const ChainLevel& top = chain.top();
  const double m = chain.bound().value();
  const StateVector& x0 = chain.initial_state();

  const LevelTerms<0> terms = level_terms<0>(top.h, chain.system(), x0.span(), m > 0.0);
  const double delta0 = m > 0.0 ? delta(Covector(terms.lp), top.eps) : 0.0;
  const double bound = min_gain(terms.value, terms.lf, delta0, m);

  double gain = 0.0;
  if (const auto* fixed = std::get_if<FixedGain>(&policy)) {
    gain = fixed->value;
    if (!(gain > bound) || !(gain > 0.0) || !std::isfinite(gain)) {
      throw GainTooSmall(i, gain, bound);
    }
  } else {
    const auto& automatic = std::get<AutoGain>(policy);
    gain = std::max(bound * automatic.margin, automatic.floor);
    if (!(gain > bound)) throw GainTooSmall(i, gain, bound);
  }

  BarrierChain out = chain;
  out.levels_.back().gain = gain;
  ScalarField next = detail::next_level(top.h, chain.system(), gain, m, top.eps);
  const double h_next = next(x0);
  if (!(h_next > 0.0) || !std::isfinite(h_next)) {
    throw ChainConstructionError("h_" + std::to_string(i + 1) + "(x0) = " + std::to_string(h_next) +
                                 " is not strictly positive");
  }
  out.levels_.push_back(ChainLevel{std::move(next), 0.0, eps_next});
  return out;
}

/// h(t0) e^{-c (t - t0)}, the comparison-lemma lower bound on a chain level.
inline double exponential_floor(double h_at_t0, double c, double t, double t0) {
  return h_at_t0 * std::exp(-c * (t - t0));
}

}  // namespace srcbf
