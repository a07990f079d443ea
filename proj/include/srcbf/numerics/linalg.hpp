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

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "srcbf/errors.hpp"

namespace srcbf {

namespace detail {
inline void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": dimension " + std::to_string(a) + " vs " +
                         std::to_string(b));
  }
}
}  // namespace detail

/// A point in state space. Dimension is fixed at construction.
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<double> entries) : entries_(std::move(entries)) {}
  StateVector(std::initializer_list<double> entries) : entries_(entries) {}

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }

  std::span<const double> span() const noexcept { return entries_; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool operator==(const StateVector&) const = default;

 private:
  std::vector<double> entries_;
};

/// A row of partial derivatives; pairs with a StateVector (or any column of
/// matching size) to give a scalar.
class Covector {
 public:
  Covector() = default;
  explicit Covector(std::vector<double> entries) : entries_(std::move(entries)) {}
  Covector(std::initializer_list<double> entries) : entries_(entries) {}

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  double& operator[](std::size_t i) { return entries_[i]; }

  std::span<const double> span() const noexcept { return entries_; }
  const std::vector<double>& entries() const noexcept { return entries_; }

  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  double pair(std::span<const double> column) const {
    detail::require_same_size(entries_.size(), column.size(), "covector pairing");
    double sum = 0.0;
    for (std::size_t i = 0; i < entries_.size(); ++i) sum += entries_[i] * column[i];
    return sum;
  }
  double pair(const StateVector& x) const { return pair(x.span()); }

  double squared_norm() const {
    double sum = 0.0;
    for (double e : entries_) sum += e * e;
    return sum;
  }
  double norm() const { return std::sqrt(squared_norm()); }

  bool operator==(const Covector&) const = default;

 private:
  std::vector<double> entries_;
};

/// Dense row-major matrix over any scalar (double or nested duals).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0.0)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// row * M, the pairing of a covector with each column of M.
template <class T>
std::vector<T> row_times(std::span<const T> row, const Matrix<T>& m) {
  detail::require_same_size(row.size(), m.rows(), "row-matrix product");
  std::vector<T> out(m.cols(), T(0.0));
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) out[c] += row[r] * m(r, c);
  }
  return out;
}

/// Column c of m as a vector.
template <class T>
std::vector<T> column(const Matrix<T>& m, std::size_t c) {
  std::vector<T> out;
  out.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(m(r, c));
  return out;
}

inline double dot(std::span<const double> a, std::span<const double> b) {
  detail::require_same_size(a.size(), b.size(), "dot product");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
  return sum;
}

inline double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

}  // namespace srcbf
