// Copyright 2026 The hullaw Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace hullaw {

// Supported ambient dimensions.
inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 6;

using Point = std::vector<double>;

// Contiguous storage of equal-dimension points (row-major).
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(int dim) : dim_(dim) {}
  PointSet(int dim, std::vector<double> coords);
  static PointSet from_points(const std::vector<Point>& points);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept {
    return dim_ == 0 ? 0 : coords_.size() / static_cast<std::size_t>(dim_);
  }
  bool empty() const noexcept { return coords_.empty(); }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  std::span<double> operator[](std::size_t i) noexcept {
    return {coords_.data() + i * dim_, static_cast<std::size_t>(dim_)};
  }
  const double* row(std::size_t i) const noexcept { return coords_.data() + i * dim_; }

  void push_back(std::span<const double> p);
  void reserve(std::size_t count) { coords_.reserve(count * dim_); }
  const std::vector<double>& data() const noexcept { return coords_; }
  Point point(std::size_t i) const;

  bool operator==(const PointSet&) const = default;

 private:
  int dim_ = 0;
  std::vector<double> coords_;
};

inline double dot(const double* a, const double* b, int n) noexcept {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Determinant of a k x k row-major matrix; the matrix is overwritten.
// Partial-pivot elimination keeps exactly-zero columns exactly zero.
double determinant_inplace(double* a, int k) noexcept;
double determinant(std::span<const double> a, int k);

// Hyperplane through n points of R^n given as row pointers. On success writes
// a unit normal (arbitrary orientation) and the offset <normal, p0>, and
// returns the sine-like conditioning |generalized cross| / prod |edge|.
// Returns 0 when the points are affinely dependent.
double hyperplane_through(const double* const* pts, int n, double* normal,
                          double& offset) noexcept;

// m-dimensional volume of the simplex spanned by m+1 points in R^n.
double simplex_volume(const double* const* pts, int m, int n) noexcept;

// Dimension of the affine hull of the points (-1 for an empty set).
int affine_dimension(const std::vector<const double*>& pts, int n, double tol);

}  // namespace hullaw
