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

// Type-erased functions of the state that can be evaluated at every nesting
// depth Real<0> ... Real<kMaxDepth>. Barrier levels and dynamics are stored
// this way so that a level built at runtime can still be differentiated.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <tuple>
#include <type_traits>
#include <utility>
#include <vector>

#include "srcbf/errors.hpp"
#include "srcbf/numerics/dual.hpp"
#include "srcbf/numerics/linalg.hpp"

namespace srcbf {

template <class T>
using ScalarOf = T;
template <class T>
using VectorOf = std::vector<T>;
template <class T>
using MatrixOf = Matrix<T>;

/// Compile-time depth tag handed to depthwise field bodies.
template <int D>
using DepthTag = std::integral_constant<int, D>;

template <template <class> class Out>
class Field {
 public:
  template <int D>
  using Fn = std::function<Out<Real<D>>(std::span<const Real<D>>)>;

  Field() = default;

  /// Wraps a generic callable `f(std::span<const T>)` valid for every Real<D>.
  template <class F>
    requires(!std::is_same_v<std::remove_cvref_t<F>, Field>)
  Field(std::size_t input_dim, F f)
      : input_dim_(input_dim),
        table_(std::make_shared<const Table>(
            build(std::move(f), std::make_integer_sequence<int, kMaxDepth + 1>{}))) {}

  /// Wraps `f(DepthTag<D>, std::span<const Real<D>>)`; the body decides per
  /// depth what it supports (used by chain levels, which need depth D+1 of
  /// the level below).
  template <class F>
  static Field depthwise(std::size_t input_dim, F f) {
    Field out;
    out.input_dim_ = input_dim;
    out.table_ = std::make_shared<const Table>(
        build_depthwise(std::move(f), std::make_integer_sequence<int, kMaxDepth + 1>{}));
    return out;
  }

  std::size_t input_dim() const noexcept { return input_dim_; }
  explicit operator bool() const noexcept { return static_cast<bool>(table_); }

  template <RealScalar T>
  Out<T> operator()(std::span<const T> x) const {
    if (!table_) throw Error("evaluating an empty field");
    if (x.size() != input_dim_) {
      throw DimensionError("field expects " + std::to_string(input_dim_) + " inputs, got " +
                           std::to_string(x.size()));
    }
    return std::get<depth_of_v<T>>(*table_)(x);
  }
  template <RealScalar T>
  Out<T> operator()(const std::vector<T>& x) const {
    return (*this)(std::span<const T>(x));
  }
  Out<double> operator()(const StateVector& x) const { return (*this)(x.span()); }

 private:
  template <int... D>
  static auto table_type(std::integer_sequence<int, D...>) -> std::tuple<Fn<D>...>;
  using Table = decltype(table_type(std::make_integer_sequence<int, kMaxDepth + 1>{}));

  template <class F, int... D>
  static Table build(F f, std::integer_sequence<int, D...>) {
    return Table{Fn<D>(f)...};
  }

  template <class F, int... D>
  static Table build_depthwise(F f, std::integer_sequence<int, D...>) {
    return Table{Fn<D>([f](std::span<const Real<D>> x) { return f(DepthTag<D>{}, x); })...};
  }

  std::size_t input_dim_ = 0;
  std::shared_ptr<const Table> table_;
};

using ScalarField = Field<ScalarOf>;
using VectorField = Field<VectorOf>;
using MatrixField = Field<MatrixOf>;

}  // namespace srcbf
