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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hullaw/linalg.hpp"

namespace hullaw {

// H(h, u) = { x : <x, u> = h } with unit normal u.
struct Hyperplane {
  Point normal;
  double offset = 0.0;

  double signed_distance(std::span<const double> x) const noexcept {
    return dot(normal.data(), x.data(), static_cast<int>(normal.size())) - offset;
  }
};

struct FacetSpec {
  std::vector<int> vertex_ids;  // sorted
  Hyperplane support;           // outer normal
  double area = 0.0;            // (n-1)-dimensional measure
  // (n-1)-simplices as n vertex ids each; pulling triangulation from the
  // lowest-index vertex.
  std::vector<std::vector<int>> triangulation;
  std::vector<double> cell_volumes;
};

// Faces of every dimension 0..n-1, each a sorted vertex-id list.
struct FaceLattice {
  std::vector<std::vector<std::vector<int>>> faces;
  // children[k][i]: indices into faces[k-1] of the facets of faces[k][i].
  std::vector<std::vector<std::vector<int>>> children;
  // Maximal chains F_0 < ... < F_k ending at faces[k][i].
  std::vector<std::vector<std::uint64_t>> chains;
};

// Vertex coordinates, facet list, and for each facet its vertex set
// (sorted) and outer unit-normal hyperplane. Used as raw constructor input.
struct PolytopeDescription {
  std::string name;
  std::vector<Point> vertices;
  std::vector<std::pair<std::vector<int>, Hyperplane>> facets;
};

// A simple polytope in R^n, 2 <= n <= 6. Immutable once built; every
// invariant is checked by build().
class SimplePolytope {
 public:
  static SimplePolytope build(PolytopeDescription description);

  int dim() const noexcept { return dim_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  const std::vector<FacetSpec>& facets() const noexcept { return facets_; }
  // Sorted ids of the n facets through each vertex.
  const std::vector<std::vector<int>>& vertex_facets() const noexcept {
    return vertex_facets_;
  }
  const FaceLattice& lattice() const noexcept { return lattice_; }

  double surface_area() const noexcept { return surface_area_; }
  double volume() const noexcept { return volume_; }
  std::uint64_t flag_count() const noexcept { return flag_count_; }
  // Flags of facet i viewed as an (n-1)-polytope.
  std::uint64_t facet_flag_count(int facet) const;
  std::vector<std::uint64_t> f_vector() const;

  // Coordinates c of u in the basis of the outer facet normals at vertex v,
  // u = sum_i c_i u_{F_i}, facets ordered as in vertex_facets()[v].
  void cone_coordinates(int v, const double* u, double* coeffs) const;
  // u in N(v, P) iff every cone coordinate is >= -slack.
  bool normal_cone_contains(int v, std::span<const double> u,
                            double slack = 1e-12) const;

  PolytopeDescription description() const;

 private:
  SimplePolytope() = default;

  std::string name_;
  int dim_ = 0;
  std::vector<Point> vertices_;
  std::vector<FacetSpec> facets_;
  std::vector<std::vector<int>> vertex_facets_;
  std::vector<std::vector<double>> cone_inverse_;  // n x n row-major per vertex
  FaceLattice lattice_;
  double surface_area_ = 0.0;
  double volume_ = 0.0;
  std::uint64_t flag_count_ = 0;
};

// Tolerance for "vertex lies on hyperplane": |<x,u> - h| <= kOnPlaneTol (1 + |h|).
inline constexpr double kOnPlaneTol = 1e-9;

SimplePolytope make_cube(int n);
SimplePolytope make_simplex(int n);
// (n-1)-simplex times [0, 1]; n + 2 facets.
SimplePolytope make_prism(int n);
// Names "cube-N", "simplex-N", "prism-N".
SimplePolytope make_builtin(std::string_view name);
// Hull of the points, which must be a full-dimensional simple polytope.
SimplePolytope from_vertices(const std::vector<Point>& points,
                             std::string name = "custom");

std::uint64_t flag_count(const SimplePolytope& polytope);
bool normal_cone_contains(const SimplePolytope& polytope, int vertex,
                          std::span<const double> u);

}  // namespace hullaw
