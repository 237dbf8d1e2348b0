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
#include "hullaw/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "hullaw/error.hpp"

namespace hullaw {

PointSet::PointSet(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ <= 0 || coords_.size() % static_cast<std::size_t>(dim_) != 0)
    fail(ErrorCode::invalid_argument, "PointSet: coordinate count is not a multiple of the dimension");
}

PointSet PointSet::from_points(const std::vector<Point>& points) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "PointSet: no points");
  PointSet set(static_cast<int>(points.front().size()));
  set.reserve(points.size());
  for (const auto& p : points) set.push_back(p);
  return set;
}

void PointSet::push_back(std::span<const double> p) {
  if (static_cast<int>(p.size()) != dim_)
    fail(ErrorCode::invalid_argument, "PointSet: point has wrong dimension");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

Point PointSet::point(std::size_t i) const {
  const auto r = (*this)[i];
  return Point(r.begin(), r.end());
}

double determinant_inplace(double* a, int k) noexcept {
  double det = 1.0;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    double best = std::abs(a[c * k + c]);
    for (int r = c + 1; r < k; ++r) {
      const double v = std::abs(a[r * k + c]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0) return 0.0;
    if (piv != c) {
      for (int j = 0; j < k; ++j) std::swap(a[c * k + j], a[piv * k + j]);
      det = -det;
    }
    const double d = a[c * k + c];
    det *= d;
    for (int r = c + 1; r < k; ++r) {
      const double f = a[r * k + c] / d;
      if (f == 0.0) continue;
      for (int j = c + 1; j < k; ++j) a[r * k + j] -= f * a[c * k + j];
    }
  }
  return det;
}

double determinant(std::span<const double> a, int k) {
  std::vector<double> copy(a.begin(), a.end());
  return determinant_inplace(copy.data(), k);
}

double hyperplane_through(const double* const* pts, int n, double* normal,
                          double& offset) noexcept {
  double edges[kMaxDim][kMaxDim];
  double edge_norm_product = 1.0;
  for (int r = 0; r + 1 < n; ++r) {
    double len2 = 0.0;
    for (int j = 0; j < n; ++j) {
      edges[r][j] = pts[r + 1][j] - pts[0][j];
      len2 += edges[r][j] * edges[r][j];
    }
    edge_norm_product *= std::sqrt(len2);
  }
  if (n == 1) {
    normal[0] = 1.0;
    offset = pts[0][0];
    return 1.0;
  }
  // Generalized cross product: cofactors of the (n-1) x n edge matrix.
  double minor[kMaxDim * kMaxDim];
  const int m = n - 1;
  double norm2 = 0.0;
  for (int col = 0; col < n; ++col) {
    for (int r = 0; r < m; ++r) {
      int cc = 0;
      for (int j = 0; j < n; ++j) {
        if (j == col) continue;
        minor[r * m + cc++] = edges[r][j];
      }
    }
    const double d = determinant_inplace(minor, m);
    normal[col] = (col % 2 == 0) ? d : -d;
    norm2 += normal[col] * normal[col];
  }
  const double norm = std::sqrt(norm2);
  if (norm == 0.0 || edge_norm_product == 0.0) return 0.0;
  for (int j = 0; j < n; ++j) normal[j] /= norm;
  offset = dot(normal, pts[0], n);
  return norm / edge_norm_product;
}

double simplex_volume(const double* const* pts, int m, int n) noexcept {
  if (m == 0) return 1.0;
  double edges[kMaxDim][kMaxDim];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < n; ++j) edges[r][j] = pts[r + 1][j] - pts[0][j];
  double gram[kMaxDim * kMaxDim];
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) gram[a * m + b] = dot(edges[a], edges[b], n);
  const double g = determinant_inplace(gram, m);
  double fact = 1.0;
  for (int k = 2; k <= m; ++k) fact *= k;
  return g > 0.0 ? std::sqrt(g) / fact : 0.0;
}

int affine_dimension(const std::vector<const double*>& pts, int n, double tol) {
  if (pts.empty()) return -1;
  if (pts.size() == 1) return 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size() - 1), n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (int j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i - 1), j) = pts[i][j] - pts[0][j];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(tol);
  return static_cast<int>(lu.rank());
}

}  // namespace hullaw
