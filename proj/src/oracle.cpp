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
#include "hullaw/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "hullaw/error.hpp"

namespace hullaw {

namespace {

struct Plane {
  std::vector<double> u;
  double h = 0.0;
  std::vector<int> on;  // indices of points on the plane
};

double cross2(const std::array<double, 2>& o, const std::array<double, 2>& a,
              const std::array<double, 2>& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone chain; returns the hull polygon counter-clockwise and its area.
double polygon_area(std::vector<std::array<double, 2>> p, double tol, std::size_t* corners) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) {
    if (corners) *corners = p.size();
    return 0.0;
  }
  std::vector<std::array<double, 2>> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross2(h[k - 2], h[k - 1], p[i]) <= tol) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(h[k - 2], h[k - 1], p[i]) <= tol) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  if (corners) *corners = h.size();
  double a = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& q = h[i];
    const auto& r = h[(i + 1) % h.size()];
    a += q[0] * r[1] - q[1] * r[0];
  }
  return 0.5 * std::abs(a);
}

}  // namespace

OracleHull brute_force_hull(const PointSet& pts, double tol) {
  const int n = pts.dim();
  const std::size_t N = pts.size();
  if (n != 2 && n != 3) fail(ErrorCode::out_of_range, "brute_force_hull supports n = 2, 3");
  if (N < static_cast<std::size_t>(n + 1)) fail(ErrorCode::degenerate, "too few points");
  double scale = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(pts[i][k]));
  scale = std::max(scale, 1.0);
  const double eps = tol * scale;

  OracleHull out;
  out.f_vector.assign(n, 0);
  if (n == 2) {
    std::vector<std::array<double, 2>> p;
    for (std::size_t i = 0; i < N; ++i) p.push_back({pts[i][0], pts[i][1]});
    std::size_t corners = 0;
    out.volume = polygon_area(p, eps * eps, &corners);
    out.f_vector = {corners, corners};
    return out;
  }

  std::vector<Plane> planes;
  std::vector<int> idx(n);
  // Iterate over all 3-subsets.
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b)
      for (std::size_t c = b + 1; c < N; ++c) {
        const double* tri[3] = {pts.row(a), pts.row(b), pts.row(c)};
        double u[3], h = 0.0;
        if (hyperplane_through(tri, 3, u, h) < 1e-12) continue;
        int above = 0, below = 0;
        for (std::size_t i = 0; i < N; ++i) {
          const double d = dot(pts.row(i), u, 3) - h;
          if (d > eps) ++above;
          else if (d < -eps) ++below;
        }
        if (above && below) continue;
        if (above) {
          for (double& x : u) x = -x;
          h = -h;
        }
        bool seen = false;
        for (const auto& pl : planes) {
          double du = 0.0;
          for (int k = 0; k < 3; ++k) du = std::max(du, std::abs(pl.u[k] - u[k]));
          if (du <= 1e-7 && std::abs(pl.h - h) <= 1e-7 * scale) {
            seen = true;
            break;
          }
        }
        if (seen) continue;
        Plane pl;
        pl.u.assign(u, u + 3);
        pl.h = h;
        for (std::size_t i = 0; i < N; ++i)
          if (std::abs(dot(pts.row(i), u, 3) - h) <= eps) pl.on.push_back(static_cast<int>(i));
        planes.push_back(std::move(pl));
      }
  if (planes.size() < 4) fail(ErrorCode::degenerate, "point set is flat");

  double centroid[3] = {0, 0, 0};
  for (std::size_t i = 0; i < N; ++i)
    for (int k = 0; k < 3; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);

  // Vertices are corners of the facet polygons; edges are pairs of
  // consecutive corners, shared by exactly two facets.
  std::set<int> vertices;
  std::set<std::pair<int, int>> edges;
  for (const auto& pl : planes) {
    double e1[3], e2[3];
    const int a = std::abs(pl.u[0]) < 0.9 ? 0 : 1;
    double t[3] = {0, 0, 0};
    t[a] = 1.0;
    const double proj = dot(t, pl.u.data(), 3);
    double len = 0.0;
    for (int k = 0; k < 3; ++k) {
      e1[k] = t[k] - proj * pl.u[k];
      len += e1[k] * e1[k];
    }
    for (double& x : e1) x /= std::sqrt(len);
    e2[0] = pl.u[1] * e1[2] - pl.u[2] * e1[1];
    e2[1] = pl.u[2] * e1[0] - pl.u[0] * e1[2];
    e2[2] = pl.u[0] * e1[1] - pl.u[1] * e1[0];

    std::vector<std::array<double, 2>> p;
    std::map<std::array<double, 2>, int> back;
    for (int i : pl.on) {
      const std::array<double, 2> q{dot(pts.row(i), e1, 3), dot(pts.row(i), e2, 3)};
      p.push_back(q);
      back[q] = i;
    }
    // Recover the corner ids by rerunning the chain on the projected points.
    std::vector<std::array<double, 2>> s = p;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    std::vector<std::array<double, 2>> hull(2 * s.size() + 1);
    std::size_t k = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      while (k >= 2 && cross2(hull[k - 2], hull[k - 1], s[i]) <= eps * eps) --k;
      hull[k++] = s[i];
    }
    for (std::size_t i = s.size() - 1, lim = k + 1; i-- > 0;) {
      while (k >= lim && cross2(hull[k - 2], hull[k - 1], s[i]) <= eps * eps) --k;
      hull[k++] = s[i];
    }
    hull.resize(k - 1);
    std::vector<int> corner_ids;
    for (const auto& q : hull) corner_ids.push_back(back[q]);
    for (std::size_t i = 0; i < corner_ids.size(); ++i) {
      const int v = corner_ids[i], w = corner_ids[(i + 1) % corner_ids.size()];
      vertices.insert(v);
      edges.insert({std::min(v, w), std::max(v, w)});
    }
    const double area = polygon_area(p, eps * eps, nullptr);
    out.volume += area * (pl.h - dot(centroid, pl.u.data(), 3)) / 3.0;
  }
  out.f_vector = {vertices.size(), edges.size(), planes.size()};
  return out;
}

OracleLattice brute_force_lattice(const SimplePolytope& P) {
  const int n = P.dim();
  const auto& facets = P.facets();
  const std::size_t m = facets.size();
  if (m > 20) fail(ErrorCode::out_of_range, "too many facets for subset enumeration");
  std::vector<std::set<std::vector<int>>> faces(n);
  for (std::uint64_t mask = 1; mask < (1ULL << m); ++mask) {
    std::vector<int> common;
    bool first = true;
    for (std::size_t f = 0; f < m; ++f) {
      if (!(mask >> f & 1)) continue;
      const auto& ids = facets[f].vertex_ids;
      if (first) {
        common = ids;
        first = false;
      } else {
        std::vector<int> tmp;
        std::set_intersection(common.begin(), common.end(), ids.begin(), ids.end(), std::back_inserter(tmp));
        common.swap(tmp);
      }
      if (common.empty()) break;
    }
    if (common.empty()) continue;
    std::vector<const double*> pts;
    for (int v : common) pts.push_back(P.vertices()[v].data());
    const int d = affine_dimension(pts, n, 1e-9);
    if (d >= 0 && d < n) faces[d].insert(common);
  }
  OracleLattice out;
  for (int d = 0; d < n; ++d) out.f_vector.push_back(faces[d].size());
  // chains[d][face] = number of chains face = F_d < F_{d+1} < ... < F_{n-1}
  std::map<std::vector<int>, std::uint64_t> above;
  for (const auto& f : faces[n - 1]) above[f] = 1;
  for (int d = n - 2; d >= 0; --d) {
    std::map<std::vector<int>, std::uint64_t> cur;
    for (const auto& f : faces[d]) {
      std::uint64_t c = 0;
      for (const auto& [g, cnt] : above)
        if (std::includes(g.begin(), g.end(), f.begin(), f.end())) c += cnt;
      cur[f] = c;
    }
    above.swap(cur);
  }
  for (const auto& [f, c] : above) out.flags += c;
  return out;
}

}  // namespace hullaw
