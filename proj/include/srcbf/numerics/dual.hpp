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

// Forward-mode dual numbers. Dual<T> carries a value and one directional
// derivative; nesting Dual<Dual<double>> yields mixed second derivatives,
// which is what evaluating L_f of a level that itself contains L_f needs.

#include <cmath>
#include <compare>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "srcbf/errors.hpp"

namespace srcbf {

template <class T>
struct Dual {
  using value_type = T;

  T value{};
  T deriv{};

  constexpr Dual() = default;
  constexpr Dual(T v, T d) : value(std::move(v)), deriv(std::move(d)) {}
  constexpr Dual(T v) : value(std::move(v)), deriv{} {}  // NOLINT: constants promote implicitly
  constexpr Dual(double v)
    requires(!std::is_same_v<T, double>)
      : value(v), deriv(0.0) {}

  Dual& operator+=(const Dual& o) {
    value += o.value;
    deriv += o.deriv;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value -= o.value;
    deriv -= o.deriv;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    deriv = value * o.deriv + deriv * o.value;
    value *= o.value;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    deriv = (deriv * o.value - value * o.deriv) / (o.value * o.value);
    value /= o.value;
    return *this;
  }
};

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// Innermost double of a (possibly nested) dual number.
inline constexpr double primal(double x) { return x; }
template <class T>
constexpr double primal(const Dual<T>& x) {
  return primal(x.value);
}

inline bool all_finite(double x) { return std::isfinite(x); }
template <class T>
bool all_finite(const Dual<T>& x) {
  return all_finite(x.value) && all_finite(x.deriv);
}

// Arithmetic. Mixed forms with double and with the inner type T are spelled
// out because template deduction does not see implicit conversions.

template <class T>
constexpr Dual<T> operator-(const Dual<T>& a) {
  return {-a.value, -a.deriv};
}
template <class T>
constexpr Dual<T> operator+(const Dual<T>& a) {
  return a;
}

template <class T>
Dual<T> operator+(Dual<T> a, const Dual<T>& b) {
  return a += b;
}
template <class T>
Dual<T> operator-(Dual<T> a, const Dual<T>& b) {
  return a -= b;
}
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
  return {a.value * b.value, a.value * b.deriv + a.deriv * b.value};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
  return {a.value / b.value, (a.deriv * b.value - a.value * b.deriv) / (b.value * b.value)};
}

template <class T>
Dual<T> operator+(const Dual<T>& a, double s) {
  return {a.value + s, a.deriv};
}
template <class T>
Dual<T> operator+(double s, const Dual<T>& a) {
  return {s + a.value, a.deriv};
}
template <class T>
Dual<T> operator-(const Dual<T>& a, double s) {
  return {a.value - s, a.deriv};
}
template <class T>
Dual<T> operator-(double s, const Dual<T>& a) {
  return {s - a.value, -a.deriv};
}
template <class T>
Dual<T> operator*(const Dual<T>& a, double s) {
  return {a.value * s, a.deriv * s};
}
template <class T>
Dual<T> operator*(double s, const Dual<T>& a) {
  return {s * a.value, s * a.deriv};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, double s) {
  return {a.value / s, a.deriv / s};
}
template <class T>
Dual<T> operator/(double s, const Dual<T>& a) {
  return {s / a.value, -s * a.deriv / (a.value * a.value)};
}

template <class T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator+(const Dual<T>& a, const T& s) {
  return {a.value + s, a.deriv};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator+(const T& s, const Dual<T>& a) {
  return {s + a.value, a.deriv};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator-(const Dual<T>& a, const T& s) {
  return {a.value - s, a.deriv};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator-(const T& s, const Dual<T>& a) {
  return {s - a.value, -a.deriv};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator*(const Dual<T>& a, const T& s) {
  return {a.value * s, a.deriv * s};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator*(const T& s, const Dual<T>& a) {
  return {s * a.value, s * a.deriv};
}
template <class T>
  requires(!std::is_same_v<T, double>)
Dual<T> operator/(const Dual<T>& a, const T& s) {
  return {a.value / s, a.deriv / s};
}

// Ordering compares primal values only.
template <class T>
std::partial_ordering operator<=>(const Dual<T>& a, const Dual<T>& b) {
  return primal(a) <=> primal(b);
}
template <class T>
std::partial_ordering operator<=>(const Dual<T>& a, double b) {
  return primal(a) <=> b;
}

// Elementary functions (chain rule on the outer layer, recursion on the inner).

template <class T>
Dual<T> sin(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {sin(a.value), cos(a.value) * a.deriv};
}

template <class T>
Dual<T> cos(const Dual<T>& a) {
  using std::cos;
  using std::sin;
  return {cos(a.value), -sin(a.value) * a.deriv};
}

template <class T>
Dual<T> exp(const Dual<T>& a) {
  using std::exp;
  T e = exp(a.value);
  return {e, e * a.deriv};
}

template <class T>
Dual<T> log(const Dual<T>& a) {
  using std::log;
  if (!(primal(a) > 0.0)) throw DomainError("log of non-positive value " + std::to_string(primal(a)));
  return {log(a.value), a.deriv / a.value};
}

/// Defined for value > 0 only; the derivative is unbounded at 0.
template <class T>
Dual<T> sqrt(const Dual<T>& a) {
  using std::sqrt;
  if (!(primal(a) > 0.0)) throw DomainError("sqrt of non-positive value " + std::to_string(primal(a)));
  T s = sqrt(a.value);
  return {s, a.deriv / (2.0 * s)};
}

template <class T>
Dual<T> tanh(const Dual<T>& a) {
  using std::tanh;
  T th = tanh(a.value);
  return {th, (1.0 - th * th) * a.deriv};
}

/// sqrt that also rejects non-positive arguments for plain doubles, so that
/// every nesting depth reports the same domain.
inline double checked_sqrt(double x) {
  if (!(x > 0.0)) throw DomainError("sqrt of non-positive value " + std::to_string(x));
  return std::sqrt(x);
}
template <class T>
Dual<T> checked_sqrt(const Dual<T>& a) {
  return sqrt(a);
}

// Nesting depth bookkeeping. Real<0> = double, Real<1> = Dual<double>, ...

/// Deepest nesting supported by type-erased fields. A backstepping chain of
/// n levels evaluates h_1 at depth n, so this caps the relative degree.
inline constexpr int kMaxDepth = 5;

namespace detail {
template <int D>
struct NestedDual {
  using type = Dual<typename NestedDual<D - 1>::type>;
};
template <>
struct NestedDual<0> {
  using type = double;
};

template <class T>
struct DepthOf;
template <>
struct DepthOf<double> : std::integral_constant<int, 0> {};
template <class T>
struct DepthOf<Dual<T>> : std::integral_constant<int, DepthOf<T>::value + 1> {};
}  // namespace detail

template <int D>
using Real = typename detail::NestedDual<D>::type;

template <class T>
inline constexpr int depth_of_v = detail::DepthOf<T>::value;

template <class T>
concept RealScalar = std::is_same_v<T, double> || is_dual<T>::value;

/// Lifts x to Dual<T> seeded with the direction `dir`.
template <class T>
std::vector<Dual<T>> seed(std::span<const T> x, std::span<const T> dir) {
  std::vector<Dual<T>> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.emplace_back(x[i], dir[i]);
  return out;
}

/// Lifts x to Dual<T> seeded with the basis direction e_j.
template <class T>
std::vector<Dual<T>> seed_basis(std::span<const T> x, std::size_t j) {
  std::vector<Dual<T>> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.emplace_back(x[i], i == j ? T(1.0) : T(0.0));
  return out;
}

}  // namespace srcbf
