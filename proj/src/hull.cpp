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
#include "hullaw/hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <ostream>

#include "hullaw/error.hpp"

namespace hullaw {

namespace {

using Ids = std::array<int, kMaxDim>;

struct Facet {
  Ids v{};   // vertices
  Ids nb{};  // nb[i] is the neighbour across the ridge opposite v[i]
  double normal[kMaxDim];
  double offset = 0.0;
  std::vector<int> outside;
  int furthest = -1;
  double furthest_dist = 0.0;
  unsigned mark = 0;
  bool alive = true;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

class Quickhull {
 public:
  Quickhull(const PointSet& pts, const HullOptions& opt) : pts_(pts), opt_(opt), n_(pts.dim()) {}

  void run() {
    compute_diameter();
    eps_ = opt_.visibility_tol * diameter_;
    initial_simplex();
    std::vector<int> stack;
    for (int f = 0; f < static_cast<int>(facets_.size()); ++f)
      if (!facets_[f].outside.empty()) stack.push_back(f);
    while (!stack.empty()) {
      const int f = stack.back();
      stack.pop_back();
      if (!facets_[f].alive || facets_[f].outside.empty()) continue;
      add_point(f, stack);
    }
  }

  double diameter() const { return diameter_; }
  const std::vector<Facet>& facets() const { return facets_; }

 private:
  const double* p(int i) const { return pts_.row(static_cast<std::size_t>(i)); }

  double distance(const Facet& f, int i) const { return dot(f.normal, p(i), n_) - f.offset; }

  void compute_diameter() {
    const std::size_t count = pts_.size();
    double lo[kMaxDim], hi[kMaxDim];
    for (int j = 0; j < n_; ++j) lo[j] = hi[j] = p(0)[j];
    for (std::size_t i = 1; i < count; ++i) {
      const double* x = pts_.row(i);
      for (int j = 0; j < n_; ++j) {
        lo[j] = std::min(lo[j], x[j]);
        hi[j] = std::max(hi[j], x[j]);
      }
    }
    double d2 = 0.0;
    for (int j = 0; j < n_; ++j) d2 += (hi[j] - lo[j]) * (hi[j] - lo[j]);
    diameter_ = std::sqrt(d2);
    if (!(diameter_ > 0.0) || !std::isfinite(diameter_))
      fail(ErrorCode::degenerate, "flat hull: all input points coincide");
  }

  // Greedy volume maximisation: each new vertex is the point furthest from
  // the affine hull of those already chosen.
  void initial_simplex() {
    const int count = static_cast<int>(pts_.size());
    std::vector<int> chosen;
    int first = 0;
    for (int i = 1; i < count; ++i)
      if (p(i)[0] < p(first)[0]) first = i;
    chosen.push_back(first);
    std::vector<std::array<double, kMaxDim>> basis;
    const double tol = 1e-10 * diameter_;
    while (static_cast<int>(chosen.size()) < n_ + 1) {
      int best = -1;
      double best_d = -1.0;
      std::array<double, kMaxDim> best_r{};
      for (int i = 0; i < count; ++i) {
        std::array<double, kMaxDim> r{};
        for (int j = 0; j < n_; ++j) r[j] = p(i)[j] - p(first)[j];
        for (const auto& b : basis) {
          const double c = dot(r.data(), b.data(), n_);
          for (int j = 0; j < n_; ++j) r[j] -= c * b[j];
        }
        const double d = std::sqrt(dot(r.data(), r.data(), n_));
        if (d > best_d) {
          best_d = d;
          best = i;
          best_r = r;
        }
      }
      if (best_d <= tol)
        fail(ErrorCode::degenerate, "flat hull: input points span only a " +
                                        std::to_string(chosen.size() - 1) +
                                        "-dimensional affine subspace of R^" + std::to_string(n_));
      for (int j = 0; j < n_; ++j) best_r[j] /= best_d;
      basis.push_back(best_r);
      chosen.push_back(best);
    }
    for (int j = 0; j < n_; ++j) {
      interior_[j] = 0.0;
      for (int c : chosen) interior_[j] += p(c)[j];
      interior_[j] /= n_ + 1;
    }
    // Facet k omits chosen[k]; the neighbour across the ridge opposite
    // chosen[m] is facet m.
    for (int k = 0; k <= n_; ++k) {
      Facet f;
      int slot = 0;
      for (int m = 0; m <= n_; ++m) {
        if (m == k) continue;
        f.v[slot] = chosen[m];
        f.nb[slot] = m;
        ++slot;
      }
      set_plane(f);
      facets_.push_back(std::move(f));
    }
    std::vector<char> used(count, 0);
    for (int c : chosen) used[c] = 1;
    for (int i = 0; i < count; ++i) {
      if (used[i]) continue;
      for (auto& f : facets_) {
        if (assign(f, i)) break;
      }
    }
  }

  void set_plane(Facet& f) const {
    const double* rows[kMaxDim];
    for (int j = 0; j < n_; ++j) rows[j] = p(f.v[j]);
    if (hyperplane_through(rows, n_, f.normal, f.offset) == 0.0)
      fail(ErrorCode::internal, "quickhull produced a degenerate facet");
    if (dot(f.normal, interior_, n_) - f.offset > 0.0) {
      for (int j = 0; j < n_; ++j) f.normal[j] = -f.normal[j];
      f.offset = -f.offset;
    }
  }

  bool assign(Facet& f, int i) const {
    const double d = distance(f, i);
    if (d <= eps_) return false;
    f.outside.push_back(i);
    if (d > f.furthest_dist) {
      f.furthest_dist = d;
      f.furthest = i;
    }
    return true;
  }

  void add_point(int start, std::vector<int>& stack) {
    const int apex = facets_[start].furthest;
    ++epoch_;
    visible_.clear();
    visible_.push_back(start);
    facets_[start].mark = epoch_;
    horizon_.clear();
    for (std::size_t q = 0; q < visible_.size(); ++q) {
      const int vf = visible_[q];
      for (int s = 0; s < n_; ++s) {
        const int g = facets_[vf].nb[s];
        if (facets_[g].mark == epoch_) continue;
        if (distance(facets_[g], apex) > eps_) {
          facets_[g].mark = epoch_;
          visible_.push_back(g);
        }
      }
    }
    // Ridges between a visible and a non-visible facet.
    for (int vf : visible_) {
      for (int s = 0; s < n_; ++s) {
        const int g = facets_[vf].nb[s];
        if (facets_[g].mark != epoch_) horizon_.push_back({vf, s});
      }
    }

    const int first_new = static_cast<int>(facets_.size());
    for (const auto& [vf, s] : horizon_) {
      Facet nf;
      nf.v = facets_[vf].v;
      nf.v[s] = apex;
      nf.nb = facets_[vf].nb;
      const int g = facets_[vf].nb[s];
      const int id = static_cast<int>(facets_.size());
      for (int t = 0; t < n_; ++t)
        if (facets_[g].nb[t] == vf) facets_[g].nb[t] = id;
      for (int t = 0; t < n_; ++t)
        if (t != s) nf.nb[t] = -1;
      set_plane(nf);
      facets_.push_back(std::move(nf));
    }
    const int last_new = static_cast<int>(facets_.size());

    // Pair up the ridges through the apex among the new facets.
    ridges_.clear();
    for (int f = first_new; f < last_new; ++f) {
      for (int t = 0; t < n_; ++t) {
        if (facets_[f].nb[t] != -1) continue;
        Ridge r;
        int k = 0;
        for (int j = 0; j < n_; ++j)
          if (j != t) r.key[k++] = facets_[f].v[j];
        std::sort(r.key.begin(), r.key.begin() + k);
        for (; k < kMaxDim; ++k) r.key[k] = -1;
        r.facet = f;
        r.slot = t;
        ridges_.push_back(r);
      }
    }
    std::sort(ridges_.begin(), ridges_.end(),
              [](const Ridge& a, const Ridge& b) { return a.key < b.key; });
    for (std::size_t i = 0; i < ridges_.size(); i += 2) {
      if (i + 1 >= ridges_.size() || ridges_[i].key != ridges_[i + 1].key ||
          (i + 2 < ridges_.size() && ridges_[i + 2].key == ridges_[i].key))
        fail(ErrorCode::internal, "quickhull horizon is not a closed ridge cycle");
      facets_[ridges_[i].facet].nb[ridges_[i].slot] = ridges_[i + 1].facet;
      facets_[ridges_[i + 1].facet].nb[ridges_[i + 1].slot] = ridges_[i].facet;
    }

    for (int vf : visible_) {
      auto& old = facets_[vf];
      for (int i : old.outside) {
        if (i == apex) continue;
        for (int f = first_new; f < last_new; ++f)
          if (assign(facets_[f], i)) break;
      }
      old.alive = false;
      std::vector<int>().swap(old.outside);
    }
    for (int f = first_new; f < last_new; ++f)
      if (!facets_[f].outside.empty()) stack.push_back(f);
  }

  struct Ridge {
    std::array<int, kMaxDim> key;
    int facet;
    int slot;
  };

  const PointSet& pts_;
  const HullOptions& opt_;
  const int n_;
  double diameter_ = 0.0;
  double eps_ = 0.0;
  double interior_[kMaxDim] = {};
  std::vector<Facet> facets_;
  unsigned epoch_ = 0;
  std::vector<int> visible_;
  std::vector<std::pair<int, int>> horizon_;
  std::vector<Ridge> ridges_;
};

int normal_rank(const std::vector<const double*>& normals, int n) {
  double basis[kMaxDim][kMaxDim];
  int rank = 0;
  for (const double* u : normals) {
    double r[kMaxDim];
    std::copy(u, u + n, r);
    for (int b = 0; b < rank; ++b) {
      const double c = dot(r, basis[b], n);
      for (int j = 0; j < n; ++j) r[j] -= c * basis[b][j];
    }
    const double len = std::sqrt(dot(r, r, n));
    if (len > 1e-10) {
      for (int j = 0; j < n; ++j) basis[rank][j] = r[j] / len;
      if (++rank == n) break;
    }
  }
  return rank;
}

}  // namespace

HullMesh convex_hull(const PointSet& points, const HullOptions& options) {
  const int n = points.dim();
  if (n < kMinDim || n > kMaxDim)
    fail(ErrorCode::out_of_range, "hull dimension must lie in [2, 6]");
  if (static_cast<int>(points.size()) < n + 1)
    fail(ErrorCode::degenerate, "flat hull: fewer than n+1 points");
  for (double x : points.data())
    if (!std::isfinite(x)) fail(ErrorCode::invalid_argument, "non-finite input coordinate");
  const bool use_labels = !options.labels.empty();
  if (use_labels && options.labels.size() != points.size())
    fail(ErrorCode::invalid_argument, "label count differs from point count");

  Quickhull qh(points, options);
  qh.run();
  const auto& facets = qh.facets();

  HullMesh mesh;
  mesh.dim = n;
  mesh.points = points;
  mesh.diameter = qh.diameter();

  std::vector<int> alive;
  std::vector<int> dense(facets.size(), -1);
  for (int f = 0; f < static_cast<int>(facets.size()); ++f) {
    if (!facets[f].alive) continue;
    dense[f] = static_cast<int>(alive.size());
    alive.push_back(f);
  }
  mesh.simplicial_facets = alive.size();

  UnionFind uf(alive.size());
  const double cos_tol = std::cos(options.merge_angle_tol);
  const double off_tol = options.merge_offset_tol * mesh.diameter;
  for (int a = 0; a < static_cast<int>(alive.size()); ++a) {
    const Facet& fa = facets[alive[a]];
    for (int s = 0; s < n; ++s) {
      const int b = dense[fa.nb[s]];
      if (b < a) continue;
      const Facet& fb = facets[alive[b]];
      bool merge = false;
      if (use_labels) {
        const int label = options.labels[fa.v[0]];
        merge = true;
        for (int j = 0; j < n && merge; ++j)
          merge = options.labels[fa.v[j]] == label && options.labels[fb.v[j]] == label;
      }
      if (!merge) {
        const double c = dot(fa.normal, fb.normal, n);
        merge = (c >= cos_tol || std::acos(std::min(1.0, c)) <= options.merge_angle_tol) &&
                std::abs(fa.offset - fb.offset) <= off_tol;
      }
      if (merge) uf.unite(a, b);
    }
  }

  std::vector<int> group(alive.size(), -1);
  for (int a = 0; a < static_cast<int>(alive.size()); ++a) {
    const int root = uf.find(a);
    if (group[root] < 0) {
      group[root] = static_cast<int>(mesh.merged_facets.size());
      mesh.merged_facets.emplace_back();
    }
    group[a] = group[root];
  }
  std::vector<std::array<double, kMaxDim>> normal_sum(mesh.merged_facets.size());
  for (auto& s : normal_sum) s.fill(0.0);
  for (int a = 0; a < static_cast<int>(alive.size()); ++a) {
    const Facet& f = facets[alive[a]];
    MergedFacet& m = mesh.merged_facets[group[a]];
    const double* rows[kMaxDim];
    for (int j = 0; j < n; ++j) {
      m.cells.push_back(f.v[j]);
      rows[j] = mesh.point(f.v[j]);
    }
    const double area = simplex_volume(rows, n - 1, n);
    m.area += area;
    // Weight by area, with a floor so that slivers still orient the sum.
    const double w = area + 1e-300;
    for (int j = 0; j < n; ++j) normal_sum[group[a]][j] += w * f.normal[j];
  }
  for (std::size_t g = 0; g < mesh.merged_facets.size(); ++g) {
    MergedFacet& m = mesh.merged_facets[g];
    m.vertex_ids = m.cells;
    std::sort(m.vertex_ids.begin(), m.vertex_ids.end());
    m.vertex_ids.erase(std::unique(m.vertex_ids.begin(), m.vertex_ids.end()), m.vertex_ids.end());
    auto& u = normal_sum[g];
    const double len = std::sqrt(dot(u.data(), u.data(), n));
    m.support.normal.assign(u.begin(), u.begin() + n);
    for (double& x : m.support.normal) x /= len;
    double h = -INFINITY;
    for (int id : m.vertex_ids) h = std::max(h, dot(m.support.normal.data(), mesh.point(id), n));
    m.support.offset = h;
  }
  mesh.f_top = static_cast<int>(mesh.merged_facets.size());

  // A triangulation vertex is extreme iff the merged facets through it have
  // normals spanning R^n.
  std::vector<std::vector<int>> incident(points.size());
  for (int g = 0; g < mesh.f_top; ++g)
    for (int id : mesh.merged_facets[g].vertex_ids) incident[id].push_back(g);
  std::vector<const double*> normals;
  for (int i = 0; i < static_cast<int>(points.size()); ++i) {
    if (static_cast<int>(incident[i].size()) < n) continue;
    normals.clear();
    for (int g : incident[i]) normals.push_back(mesh.merged_facets[g].support.normal.data());
    if (normal_rank(normals, n) == n) mesh.hull_vertex_ids.push_back(i);
  }
  mesh.f0 = static_cast<int>(mesh.hull_vertex_ids.size());
  mesh.volume = hull_volume(mesh);
  return mesh;
}

double hull_volume(const HullMesh& mesh) {
  const int n = mesh.dim;
  double centre[kMaxDim] = {};
  if (mesh.hull_vertex_ids.empty()) return 0.0;
  for (int id : mesh.hull_vertex_ids)
    for (int j = 0; j < n; ++j) centre[j] += mesh.point(id)[j];
  for (int j = 0; j < n; ++j) centre[j] /= static_cast<double>(mesh.hull_vertex_ids.size());
  double fact = 1.0;
  for (int k = 2; k <= n; ++k) fact *= k;
  double total = 0.0;
  double a[kMaxDim * kMaxDim];
  for (const auto& m : mesh.merged_facets) {
    const std::size_t cells = m.cell_count(n);
    double facet_sum = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
      for (int r = 0; r < n; ++r) {
        const double* x = mesh.point(m.cells[c * n + r]);
        for (int j = 0; j < n; ++j) a[r * n + j] = x[j] - centre[j];
      }
      facet_sum += std::abs(determinant_inplace(a, n));
    }
    // The centre lies beneath every facet, so each pyramid is positively
    // oriented; the sign only matters for slivers.
    const double height = m.support.offset - dot(m.support.normal.data(), centre, n);
    total += height >= 0.0 ? facet_sum : -facet_sum;
  }
  return total / fact;
}

void write_off(const HullMesh& mesh, std::ostream& out) {
  if (mesh.dim != 3) fail(ErrorCode::invalid_argument, "OFF output is only defined for n = 3");
  std::vector<int> index(mesh.points.size(), -1);
  for (std::size_t k = 0; k < mesh.hull_vertex_ids.size(); ++k)
    index[mesh.hull_vertex_ids[k]] = static_cast<int>(k);
  out.precision(17);
  out << "OFF\n" << mesh.hull_vertex_ids.size() << ' ' << mesh.merged_facets.size() << " 0\n";
  for (int id : mesh.hull_vertex_ids) {
    const double* x = mesh.point(id);
    out << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
  }
  for (const auto& m : mesh.merged_facets) {
    std::vector<int> poly;
    for (int id : m.vertex_ids)
      if (index[id] >= 0) poly.push_back(id);
    double c[3] = {0, 0, 0};
    for (int id : poly)
      for (int j = 0; j < 3; ++j) c[j] += mesh.point(id)[j] / static_cast<double>(poly.size());
    const double* u = m.support.normal.data();
    // In-plane frame (e1, e2) with e1 x e2 = u, so increasing angle is
    // counter-clockwise seen from outside.
    double e1[3];
    if (std::abs(u[0]) < 0.9) {
      e1[0] = 0; e1[1] = u[2]; e1[2] = -u[1];
    } else {
      e1[0] = -u[2]; e1[1] = 0; e1[2] = u[0];
    }
    const double l1 = std::sqrt(dot(e1, e1, 3));
    for (double& x : e1) x /= l1;
    const double e2[3] = {u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2],
                          u[0] * e1[1] - u[1] * e1[0]};
    std::vector<std::pair<double, int>> order;
    for (int id : poly) {
      double d[3];
      for (int j = 0; j < 3; ++j) d[j] = mesh.point(id)[j] - c[j];
      order.emplace_back(std::atan2(dot(d, e2, 3), dot(d, e1, 3)), index[id]);
    }
    std::sort(order.begin(), order.end());
    out << order.size();
    for (const auto& [angle, k] : order) out << ' ' << k;
    out << '\n';
  }
}

}  // namespace hullaw
