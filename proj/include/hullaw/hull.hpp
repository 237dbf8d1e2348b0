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
#include <iosfwd>
#include <span>
#include <vector>

#include "hullaw/linalg.hpp"
#include "hullaw/polytope.hpp"

namespace hullaw {

// A facet of the hull after coplanar simplicial facets have been merged.
struct MergedFacet {
  Hyperplane support;            // outer normal
  std::vector<int> vertex_ids;   // sorted input indices of all cell vertices
  std::vector<int> cells;        // simplicial cells, n input indices each
  double area = 0.0;

  std::size_t cell_count(int n) const noexcept { return cells.size() / static_cast<std::size_t>(n); }
};

struct HullOptions {
  // Merge two adjacent simplicial facets when their unit normals differ by at
  // most merge_angle_tol and offsets by at most merge_offset_tol * diameter.
  double merge_angle_tol = 1e-9;
  double merge_offset_tol = 1e-9;
  // A point is beyond a facet when its signed distance exceeds
  // visibility_tol * diameter.
  double visibility_tol = 1e-10;
  // Optional exact coplanarity hints, one per input point (e.g. the id of the
  // polytope facet a boundary sample was drawn from). Adjacent simplicial
  // facets whose vertices all carry one common label are merged regardless of
  // the floating-point plane comparison.
  std::span<const int> labels{};
};

struct HullMesh {
  int dim = 0;
  PointSet points;                     // copy of the input
  std::vector<int> hull_vertex_ids;    // distinct extreme points, sorted
  std::vector<MergedFacet> merged_facets;
  std::size_t simplicial_facets = 0;
  int f0 = 0;
  int f_top = 0;
  double volume = 0.0;
  double diameter = 0.0;               // bounding-box diagonal of the input

  const double* point(int i) const noexcept { return points.row(static_cast<std::size_t>(i)); }
};

// Quickhull (beneath-beyond with outside sets) in 2 <= n <= 6 dimensions.
// Throws Error(degenerate) when the input does not span R^n.
HullMesh convex_hull(const PointSet& points, const HullOptions& options = {});

// Sum over simplicial cells of signed pyramid volumes from the vertex centroid.
double hull_volume(const HullMesh& mesh);

// Object File Format dump (n = 3 only): hull vertices and merged facet polygons.
void write_off(const HullMesh& mesh, std::ostream& out);

}  // namespace hullaw
