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
#include "hullaw/polytope.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "hullaw/error.hpp"
#include "hullaw/hull.hpp"

namespace hullaw {

namespace {

void check_dimension(int n) {
  if (n < kMinDim || n > kMaxDim)
    fail(ErrorCode::out_of_range, "dimension " + std::to_string(n) +
                                      " outside the supported range [2, 6]");
}

std::string format_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ')';
  return os.str();
}

bool on_plane(const Hyperplane& h, const Point& x) {
  return std::abs(h.signed_distance(x)) <= kOnPlaneTol * (1.0 + std::abs(h.offset));
}

std::vector<int> intersect(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

int face_dimension(const std::vector<Point>& vertices, const std::vector<int>& ids, int n) {
  std::vector<const double*> pts;
  pts.reserve(ids.size());
  for (int id : ids) pts.push_back(vertices[id].data());
  return affine_dimension(pts, n, 1e-9);
}

// Faces by dimension, from the facets down to the vertices. Every face of a
// polytope is an intersection of facets, so the (k-1)-faces of a k-face F are
// the intersections F cap G of affine dimension k-1.
FaceLattice build_lattice(const std::vector<Point>& vertices,
                          const std::vector<FacetSpec>& facets, int n) {
  FaceLattice lat;
  lat.faces.resize(n);
  lat.children.resize(n);
  lat.chains.resize(n);
  for (const auto& f : facets) lat.faces[n - 1].push_back(f.vertex_ids);
  for (int k = n - 1; k >= 1; --k) {
    std::map<std::vector<int>, int> index;
    lat.children[k].resize(lat.faces[k].size());
    for (std::size_t i = 0; i < lat.faces[k].size(); ++i) {
      const auto& face = lat.faces[k][i];
      for (const auto& g : facets) {
        auto sub = intersect(face, g.vertex_ids);
        if (sub.empty() || sub.size() == face.size()) continue;
        if (face_dimension(vertices, sub, n) != k - 1) continue;
        auto [it, inserted] = index.emplace(sub, static_cast<int>(lat.faces[k - 1].size()));
        if (inserted) lat.faces[k - 1].push_back(sub);
        auto& ch = lat.children[k][i];
        if (std::find(ch.begin(), ch.end(), it->second) == ch.end()) ch.push_back(it->second);
      }
      std::sort(lat.children[k][i].begin(), lat.children[k][i].end());
    }
  }
  lat.chains[0].assign(lat.faces[0].size(), 1);
  for (int k = 1; k < n; ++k) {
    lat.chains[k].assign(lat.faces[k].size(), 0);
    for (std::size_t i = 0; i < lat.faces[k].size(); ++i)
      for (int c : lat.children[k][i]) lat.chains[k][i] += lat.chains[k - 1][c];
  }
  return lat;
}

// Pulling triangulation: cone the lowest-index vertex of the face over the
// triangulations of the subfaces that miss it.
std::vector<std::vector<int>> triangulate_face(const FaceLattice& lat, int k, int i) {
  const auto& face = lat.faces[k][i];
  if (k == 0) return {face};
  if (k == 1) return {face};
  const int apex = face.front();
  std::vector<std::vector<int>> cells;
  for (int c : lat.children[k][i]) {
    const auto& sub = lat.faces[k - 1][c];
    if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
    for (auto cell : triangulate_face(lat, k - 1, c)) {
      cell.insert(cell.begin(), apex);
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

int parse_dimension_suffix(std::string_view name, std::string_view prefix) {
  std::string_view rest = name.substr(prefix.size());
  int n = 0;
  const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
  if (ec != std::errc() || ptr != rest.data() + rest.size())
    fail(ErrorCode::invalid_argument, "malformed builtin polytope name '" + std::string(name) + "'");
  return n;
}

Hyperplane axis_plane(int n, int axis, double sign, double offset) {
  Hyperplane h;
  h.normal.assign(n, 0.0);
  h.normal[axis] = sign;
  h.offset = offset;
  return h;
}

}  // namespace

SimplePolytope SimplePolytope::build(PolytopeDescription d) {
  SimplePolytope p;
  p.name_ = std::move(d.name);
  if (d.vertices.empty()) fail(ErrorCode::invalid_argument, "polytope has no vertices");
  const int n = static_cast<int>(d.vertices.front().size());
  check_dimension(n);
  p.dim_ = n;
  for (std::size_t v = 0; v < d.vertices.size(); ++v) {
    if (static_cast<int>(d.vertices[v].size()) != n)
      fail(ErrorCode::invalid_argument, "vertex " + std::to_string(v) + " has the wrong dimension");
    for (double x : d.vertices[v])
      if (!std::isfinite(x))
        fail(ErrorCode::invalid_argument, "vertex " + std::to_string(v) + " has a non-finite coordinate");
  }
  if (static_cast<int>(d.vertices.size()) < n + 1)
    fail(ErrorCode::degenerate, "fewer than n+1 vertices");
  {
    std::vector<const double*> pts;
    for (const auto& v : d.vertices) pts.push_back(v.data());
    if (affine_dimension(pts, n, 1e-12) != n)
      fail(ErrorCode::degenerate, "vertices do not span R^" + std::to_string(n));
  }
  p.vertices_ = std::move(d.vertices);
  const int nv = static_cast<int>(p.vertices_.size());

  for (std::size_t fi = 0; fi < d.facets.size(); ++fi) {
    auto& [ids, plane] = d.facets[fi];
    const std::string tag = "facet " + std::to_string(fi);
    if (static_cast<int>(plane.normal.size()) != n)
      fail(ErrorCode::invalid_argument, tag + ": normal has the wrong dimension");
    const double len = std::sqrt(dot(plane.normal.data(), plane.normal.data(), n));
    if (std::abs(len - 1.0) > 1e-12)
      fail(ErrorCode::invalid_argument, tag + ": normal is not a unit vector");
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids)
      if (id < 0 || id >= nv) fail(ErrorCode::invalid_argument, tag + ": vertex id out of range");
    std::vector<int> incident;
    for (int v = 0; v < nv; ++v) {
      const double s = plane.signed_distance(p.vertices_[v]);
      if (s > kOnPlaneTol * (1.0 + std::abs(plane.offset)))
        fail(ErrorCode::invalid_argument, tag + ": vertex " + std::to_string(v) +
                                              " lies outside the facet halfspace");
      if (on_plane(plane, p.vertices_[v])) incident.push_back(v);
    }
    if (incident != ids)
      fail(ErrorCode::invalid_argument, tag + ": listed vertices disagree with the vertices on its hyperplane");
    if (face_dimension(p.vertices_, ids, n) != n - 1)
      fail(ErrorCode::degenerate, tag + ": vertices do not span a hyperplane");
    FacetSpec spec;
    spec.vertex_ids = ids;
    spec.support = plane;
    p.facets_.push_back(std::move(spec));
  }
  for (std::size_t a = 0; a < p.facets_.size(); ++a)
    for (std::size_t b = a + 1; b < p.facets_.size(); ++b)
      if (p.facets_[a].vertex_ids == p.facets_[b].vertex_ids)
        fail(ErrorCode::invalid_argument, "facets " + std::to_string(a) + " and " +
                                              std::to_string(b) + " coincide");

  p.vertex_facets_.assign(nv, {});
  for (int f = 0; f < static_cast<int>(p.facets_.size()); ++f)
    for (int v : p.facets_[f].vertex_ids) p.vertex_facets_[v].push_back(f);
  for (int v = 0; v < nv; ++v) {
    const int count = static_cast<int>(p.vertex_facets_[v].size());
    if (count != n)
      fail(ErrorCode::non_simple, "non-simple polytope: vertex " + std::to_string(v) + " " +
                                      format_point(p.vertices_[v]) + " lies on " +
                                      std::to_string(count) + " facets (a simple polytope needs exactly " +
                                      std::to_string(n) + ")");
  }

  p.cone_inverse_.resize(nv);
  for (int v = 0; v < nv; ++v) {
    Eigen::MatrixXd u(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) u(j, i) = p.facets_[p.vertex_facets_[v][i]].support.normal[j];
    Eigen::FullPivLU<Eigen::MatrixXd> lu(u);
    if (!lu.isInvertible())
      fail(ErrorCode::internal, "singular facet-normal system at vertex " + std::to_string(v));
    const Eigen::MatrixXd inv = lu.inverse();
    auto& out = p.cone_inverse_[v];
    out.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out[i * n + j] = inv(i, j);
  }

  p.lattice_ = build_lattice(p.vertices_, p.facets_, n);
  for (std::size_t k = 0; k < p.lattice_.faces.size(); ++k)
    if (p.lattice_.faces[k].empty())
      fail(ErrorCode::degenerate, "face lattice has no faces of dimension " + std::to_string(k));
  if (static_cast<int>(p.lattice_.faces[0].size()) != nv)
    fail(ErrorCode::invalid_argument, "some listed vertex is not a vertex of the facet complex");

  Point centroid(n, 0.0);
  for (const auto& v : p.vertices_)
    for (int j = 0; j < n; ++j) centroid[j] += v[j] / nv;

  for (int f = 0; f < static_cast<int>(p.facets_.size()); ++f) {
    auto& spec = p.facets_[f];
    spec.triangulation = triangulate_face(p.lattice_, n - 1, f);
    spec.area = 0.0;
    std::vector<const double*> pts(n);
    for (const auto& cell : spec.triangulation) {
      for (int j = 0; j < n; ++j) pts[j] = p.vertices_[cell[j]].data();
      const double vol = simplex_volume(pts.data(), n - 1, n);
      spec.cell_volumes.push_back(vol);
      spec.area += vol;
    }
    p.surface_area_ += spec.area;
    p.volume_ += spec.area * (spec.support.offset - dot(spec.support.normal.data(), centroid.data(), n)) / n;
    p.flag_count_ += p.lattice_.chains[n - 1][f];
  }
  if (p.flag_count_ == 0) fail(ErrorCode::internal, "flag count is zero");
  return p;
}

std::uint64_t SimplePolytope::facet_flag_count(int facet) const {
  return lattice_.chains.at(dim_ - 1).at(facet);
}

std::vector<std::uint64_t> SimplePolytope::f_vector() const {
  std::vector<std::uint64_t> f;
  for (const auto& faces : lattice_.faces) f.push_back(faces.size());
  return f;
}

void SimplePolytope::cone_coordinates(int v, const double* u, double* coeffs) const {
  const auto& inv = cone_inverse_.at(v);
  for (int i = 0; i < dim_; ++i) coeffs[i] = dot(inv.data() + i * dim_, u, dim_);
}

bool SimplePolytope::normal_cone_contains(int v, std::span<const double> u,
                                          double slack) const {
  if (static_cast<int>(u.size()) != dim_)
    fail(ErrorCode::invalid_argument, "direction has the wrong dimension");
  if (v < 0 || v >= static_cast<int>(vertices_.size()))
    fail(ErrorCode::invalid_argument, "vertex id out of range");
  double c[kMaxDim];
  cone_coordinates(v, u.data(), c);
  for (int i = 0; i < dim_; ++i)
    if (c[i] < -slack) return false;
  return true;
}

PolytopeDescription SimplePolytope::description() const {
  PolytopeDescription d;
  d.name = name_;
  d.vertices = vertices_;
  for (const auto& f : facets_) d.facets.emplace_back(f.vertex_ids, f.support);
  return d;
}

SimplePolytope make_cube(int n) {
  check_dimension(n);
  PolytopeDescription d;
  d.name = "cube-" + std::to_string(n);
  const int nv = 1 << n;
  for (int mask = 0; mask < nv; ++mask) {
    Point v(n);
    for (int j = 0; j < n; ++j) v[j] = (mask >> j) & 1;
    d.vertices.push_back(v);
  }
  for (int axis = 0; axis < n; ++axis) {
    for (int side = 0; side < 2; ++side) {
      std::vector<int> ids;
      for (int mask = 0; mask < nv; ++mask)
        if (((mask >> axis) & 1) == side) ids.push_back(mask);
      d.facets.emplace_back(ids, axis_plane(n, axis, side ? 1.0 : -1.0, side ? 1.0 : 0.0));
    }
  }
  return SimplePolytope::build(std::move(d));
}

SimplePolytope make_simplex(int n) {
  check_dimension(n);
  PolytopeDescription d;
  d.name = "simplex-" + std::to_string(n);
  d.vertices.push_back(Point(n, 0.0));
  for (int j = 0; j < n; ++j) {
    Point e(n, 0.0);
    e[j] = 1.0;
    d.vertices.push_back(e);
  }
  for (int axis = 0; axis < n; ++axis) {
    std::vector<int> ids;
    for (int v = 0; v <= n; ++v)
      if (v != axis + 1) ids.push_back(v);
    d.facets.emplace_back(ids, axis_plane(n, axis, -1.0, 0.0));
  }
  std::vector<int> slanted(n);
  std::iota(slanted.begin(), slanted.end(), 1);
  Hyperplane h;
  h.normal.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
  h.offset = 1.0 / std::sqrt(static_cast<double>(n));
  d.facets.emplace_back(slanted, h);
  return SimplePolytope::build(std::move(d));
}

SimplePolytope make_prism(int n) {
  check_dimension(n);
  if (n < 3) fail(ErrorCode::out_of_range, "prism needs n >= 3");
  const int m = n - 1;  // base simplex dimension
  PolytopeDescription d;
  d.name = "prism-" + std::to_string(n);
  for (int level = 0; level < 2; ++level) {
    for (int b = 0; b <= m; ++b) {
      Point v(n, 0.0);
      if (b > 0) v[b - 1] = 1.0;
      v[n - 1] = level;
      d.vertices.push_back(v);
    }
  }
  auto id = [m](int level, int b) { return level * (m + 1) + b; };
  for (int axis = 0; axis < m; ++axis) {
    std::vector<int> ids;
    for (int level = 0; level < 2; ++level)
      for (int b = 0; b <= m; ++b)
        if (b != axis + 1) ids.push_back(id(level, b));
    d.facets.emplace_back(ids, axis_plane(n, axis, -1.0, 0.0));
  }
  {
    std::vector<int> ids;
    for (int level = 0; level < 2; ++level)
      for (int b = 1; b <= m; ++b) ids.push_back(id(level, b));
    Hyperplane h;
    h.normal.assign(n, 1.0 / std::sqrt(static_cast<double>(m)));
    h.normal[n - 1] = 0.0;
    h.offset = 1.0 / std::sqrt(static_cast<double>(m));
    d.facets.emplace_back(ids, h);
  }
  for (int level = 0; level < 2; ++level) {
    std::vector<int> ids;
    for (int b = 0; b <= m; ++b) ids.push_back(id(level, b));
    d.facets.emplace_back(ids, axis_plane(n, n - 1, level ? 1.0 : -1.0, level ? 1.0 : 0.0));
  }
  return SimplePolytope::build(std::move(d));
}

SimplePolytope make_builtin(std::string_view name) {
  if (name.starts_with("cube-")) return make_cube(parse_dimension_suffix(name, "cube-"));
  if (name.starts_with("simplex-")) return make_simplex(parse_dimension_suffix(name, "simplex-"));
  if (name.starts_with("prism-")) return make_prism(parse_dimension_suffix(name, "prism-"));
  fail(ErrorCode::invalid_argument, "unknown builtin polytope '" + std::string(name) +
                                        "' (expected cube-N, simplex-N or prism-N)");
}

SimplePolytope from_vertices(const std::vector<Point>& points, std::string name) {
  if (points.empty()) fail(ErrorCode::invalid_argument, "no points given");
  const int n = static_cast<int>(points.front().size());
  check_dimension(n);
  const PointSet set = PointSet::from_points(points);
  const HullMesh mesh = convex_hull(set);

  PolytopeDescription d;
  d.name = std::move(name);
  std::map<int, int> remap;
  for (int id : mesh.hull_vertex_ids) {
    remap[id] = static_cast<int>(d.vertices.size());
    d.vertices.push_back(points[id]);
  }
  for (const auto& facet : mesh.merged_facets) {
    std::vector<int> ids;
    for (int id : facet.vertex_ids) {
      const auto it = remap.find(id);
      if (it != remap.end()) ids.push_back(it->second);
    }
    d.facets.emplace_back(std::move(ids), facet.support);
  }
  // Re-derive each facet's vertex list from its plane so that build() sees a
  // consistent incidence even when the hull triangulation omitted a vertex.
  for (auto& [ids, plane] : d.facets) {
    ids.clear();
    for (int v = 0; v < static_cast<int>(d.vertices.size()); ++v)
      if (on_plane(plane, d.vertices[v])) ids.push_back(v);
  }
  return SimplePolytope::build(std::move(d));
}

std::uint64_t flag_count(const SimplePolytope& polytope) { return polytope.flag_count(); }

bool normal_cone_contains(const SimplePolytope& polytope, int vertex,
                          std::span<const double> u) {
  return polytope.normal_cone_contains(vertex, u);
}

}  // namespace hullaw
